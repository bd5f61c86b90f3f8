//! Causal conferencing regions for growing link capacities, sampled on
//! shared abscissas. Pass a directory to also write the CSV and SVG.

use coopmac::cli::{cmd_fig3, parse_config};
use coopmac::gaussian::{cstar, sweep_region_multi, Abscissas, GaussianMacParams, Scenario, SweepGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = GaussianMacParams::mac(20.0, 40.0, 10.0, 1.0)?;
    let c_star = cstar(&p)?.value;
    let cs = [0.0, 0.5, 1.0, 2.0, 3.5];
    let caps: Vec<(f64, f64)> = cs.iter().map(|&c| (c, c)).collect();
    let grid = SweepGrid { beta: 41, alpha: 41, resolution: 129 };
    let fs = sweep_region_multi(Scenario::MacceC, &p, &caps, grid, 0.0, Abscissas::Shared)?;
    println!("C* = {c_star:.6}");
    for (c, f) in cs.iter().zip(&fs) {
        let first = f.points.first().unwrap();
        let last = f.points.last().unwrap();
        println!(
            "C = {c:<4} max R2 = {:.4}  max R1 = {:.4}  max sum = {:.4}",
            first.r2,
            last.r1,
            f.max_sum_rate().unwrap()
        );
    }

    if let Some(dir) = std::env::args().nth(1) {
        let cfg = parse_config("p1=20\np2=40\nps=10\npz=1\ngrid_beta=41\ngrid_alpha=41\nresolution=129\nsvg=x")?;
        let out = cmd_fig3(&cfg)?;
        std::fs::write(format!("{dir}/fig3.csv"), &out.text)?;
        std::fs::write(format!("{dir}/fig3.svg"), out.svg.unwrap())?;
        println!("wrote {dir}/fig3.csv and {dir}/fig3.svg");
    }
    Ok(())
}
