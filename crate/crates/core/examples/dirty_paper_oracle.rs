//! Covariance-level check of the dirty-paper caps: optimize the inflation
//! coefficients of an explicit jointly Gaussian scheme and compare with the
//! closed form.

use coopmac::gaussian::{gaussian_cmi, maccm_nc_bounds, oracle_optimize, GaussianMacParams, Var5};

fn main() -> coopmac::Result<()> {
    let p = GaussianMacParams::mac(1.0, 2.0, 10.0, 1.0)?;
    for (b1, b2) in [(1.0, 1.0), (0.3, 0.7), (0.0, 0.5)] {
        let (scheme, got) = oracle_optimize(&p, b1, b2)?;
        let want = maccm_nc_bounds(&p, b1, b2)?;
        println!("beta = ({b1}, {b2}) gamma = {:.5?}", scheme.gamma);
        println!("  oracle      {:.9?}", got.as_array());
        println!("  closed form {:.9?}", want.as_array());
        let leak = gaussian_cmi(scheme.covariance(), &[Var5::U, Var5::V1, Var5::V2], &[Var5::S], &[]);
        println!("  I(U V1 V2; S) = {leak:.6} bits paid for binning");
    }
    Ok(())
}
