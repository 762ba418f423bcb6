use heffter::search::{solve, SearchConfig, SearchMode, SearchOutcome};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args[1].parse().unwrap();
    let k: usize = args[2].parse().unwrap();
    let mode = match args[3].as_str() {
        "x" => SearchMode::ExhaustAll,
        "c" => SearchMode::CountOnly,
        _ => SearchMode::FirstSolution,
    };
    let mut cfg = SearchConfig::new(n, k, mode);
    cfg.deterministic_order = args.get(4).map(|s| s == "seq").unwrap_or(false);
    let t = Instant::now();
    let res = solve(&cfg);
    let label = match res.outcome {
        SearchOutcome::Found(_) => "Found",
        SearchOutcome::NoneExists => "None",
        SearchOutcome::Inconclusive => "Inconclusive",
    };
    println!(
        "({n},{k}) {label} nodes={} solutions={} in {:?}",
        res.nodes_explored, res.solutions_found, t.elapsed()
    );
}
