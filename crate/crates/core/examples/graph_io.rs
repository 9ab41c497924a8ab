//! Generating graphs, writing and reading edge lists, and restricting to the
//! largest connected component.

use infocent::graph::{
    generate_ba, generate_ws, largest_connected_component, load_edge_list, parse_edge_list,
    write_edge_list,
};
use infocent::Result;

pub fn run(dir: &std::path::Path) -> Result<bool> {
    let ws = generate_ws(50, 4, 0.1, 7)?;
    let ba = generate_ba(50, 2, 7)?;
    println!("WS(50, 4, 0.1): {} edges; BA(50, 2): {} edges", ws.edge_count(), ba.edge_count());

    let path = dir.join("ws50.txt");
    write_edge_list(&ws, &path)?;
    let back = load_edge_list(&path, true)?;
    let same = back.graph == ws;
    println!("round trip through {}: identical = {same}", path.display());

    // labels need not be contiguous; the triangle is dropped as the smaller part
    let text = "# two components\n10 20\n20 30\n30 40\n40 10\n7 8\n8 9\n9 7 \n";
    let loaded = parse_edge_list(text, false)?;
    let lcc = largest_connected_component(&loaded.graph)?;
    let labels: Vec<u64> = lcc.original.iter().map(|&i| loaded.ids.label(i)).collect();
    println!("largest component keeps labels {labels:?}");
    Ok(same)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&std::env::temp_dir()).map(|_| ())
}
