//! Build, generate, inspect and serialize graphs.

use hitlocal::generate::{generate_ba, generate_er, generate_sbm};
use hitlocal::graph::fixtures::star;
use hitlocal::{pagerank, stationary, Graph, PairSampler, PairStrategy};

fn main() -> hitlocal::Result<()> {
    let g = Graph::from_edge_list("# a tiny graph\n10 20\n20 30\n30 10\n30 40\n", false)?;
    println!("n={} m={} ids={:?}", g.graph.n(), g.graph.m(), g.ids);
    println!("node 40 is dense id {:?}", g.dense_id(40));

    for (name, h) in [
        ("er", generate_er(1000, 0.01, 1)?),
        ("ba", generate_ba(1000, 10, 1)?),
        ("sbm", generate_sbm(&[200; 5], 0.05, 0.01, 1)?),
    ] {
        let (lcc, _) = h.largest_component();
        println!(
            "{name}: n={} m={} lcc={} bipartite={}",
            h.n(),
            h.m(),
            lcc.n(),
            h.is_bipartite()
        );
    }

    let s = star(5);
    let pi = stationary(&s)?;
    let pr = pagerank(&s, 0.85, 1e-12)?;
    println!("star: pi(center)={:.3} pagerank(center)={:.3}", pi.get(0), pr[0]);
    let pairs = PairSampler::new(PairStrategy::DegreeProp, 7).sample(&s, 5)?;
    println!("degree-proportional pairs: {pairs:?}");

    print!("{}", s.to_edge_list_string());
    Ok(())
}
