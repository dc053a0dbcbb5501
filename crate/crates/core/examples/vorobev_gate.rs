//! Chordal scenarios only admit noncontextual behaviour; others are candidates.

use pauli_cycles::contextuality::vorobev_gate;
use pauli_cycles::graph::{conjoined_five_cycles, cycle_graph, path_graph, Graph, Scenario};

fn main() -> pauli_cycles::Result<()> {
    let graphs: Vec<(&str, Graph)> = vec![
        ("path 6", path_graph(6)?),
        ("triangle", cycle_graph(3)?),
        ("4-cycle", cycle_graph(4)?),
        (
            "4-cycle + chord",
            Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])?,
        ),
        ("5-cycles, one vertex shared", conjoined_five_cycles(1)?),
        ("5-cycles, two edges shared", conjoined_five_cycles(3)?),
    ];
    for (name, g) in graphs {
        let verdict = vorobev_gate(&Scenario::new(g)?);
        println!("{name:<30} {}", serde_json::to_string(&verdict)?);
    }
    Ok(())
}
