//! Drive a region computation from a key=value configuration, the same path
//! the binary takes.

use coopmac::cli::{cmd_region, parse_config, parse_rate_rows};

const CONFIG: &str = "\
scenario=macce-c
p1=20
p2=40
ps=10
pz=1
c12=1
c21=1
# coarse grids keep this quick
grid_beta=21
grid_alpha=21
resolution=9
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = parse_config(CONFIG)?;
    cfg.apply_override("c21=0.5")?;
    let out = cmd_region(&cfg)?;
    print!("{}", out.text);
    println!("{} frontier rows", parse_rate_rows(&out.text)?.len());

    if let Err(e) = parse_config("p1=20\np2=-1") {
        println!("rejected: {e}");
    }
    Ok(())
}
