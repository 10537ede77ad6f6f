// scratch probe for the n=32 lattice path
use pgstlab_core::kronecker::{pgst_targets, solve_lattice, phase_report_at_two_pi_multiple};
use pgstlab_core::transfer::amplitude_at_two_pi_multiple;
use pgstlab_core::graph::CirculantGraph;

fn main() {
    for eps in [1e-2f64, 3e-3, 1e-3] {
        let prob = pgst_targets(32, eps).unwrap();
        let t0 = std::time::Instant::now();
        let sol = solve_lattice(&prob, i128::MAX / 2).unwrap();
        println!("eps {eps}: {:?} in {:?}", sol.as_ref().map(|s| (s.q, s.worst_error)), t0.elapsed());
        if let Some(s) = sol {
            let rep = phase_report_at_two_pi_multiple(32, s.q).unwrap();
            let g = CirculantGraph::cycle(32).unwrap();
            let f = amplitude_at_two_pi_multiple(&g, 0, 16, s.q).unwrap().fidelity;
            println!("   worst residual {} fidelity {}", rep.worst, f);
        }
    }
}
