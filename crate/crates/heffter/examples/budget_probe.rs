use heffter::search::{solve, SearchConfig, SearchMode, SearchOutcome};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args[1].parse().unwrap();
    let k: usize = args[2].parse().unwrap();
    let budget: u64 = args[3].parse().unwrap();
    let mut cfg = SearchConfig::new(n, k, SearchMode::CountOnly);
    cfg.node_budget = Some(budget);
    cfg.deterministic_order = true;
    let t = Instant::now();
    let res = solve(&cfg);
    let label = match res.outcome {
        SearchOutcome::Found(_) => "Found",
        SearchOutcome::NoneExists => "None",
        SearchOutcome::Inconclusive => "Inconclusive",
    };
    println!(
        "({n},{k}) {label} nodes={} solutions={} in {:?} -> {:.1} Mnodes/s",
        res.nodes_explored, res.solutions_found, t.elapsed(),
        res.nodes_explored as f64 / t.elapsed().as_secs_f64() / 1e6
    );
}
