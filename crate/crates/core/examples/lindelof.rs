//! Lindelöf sums at order two: the full zero set of `s` cancels, the real
//! half grows like `ln r`, and the sector chain bounds the growth below.

use fockzero::sequences::{lindelof_sum, Axes, ShellFamily, ShellStream};
use fockzero::verify::{lindelof_check, sector_lemma_demo, RadialConfig};
use fockzero::sequences::gen_zeros_of_s;

fn main() -> fockzero::Result<()> {
    let full = ShellStream::new(ShellFamily::ZerosOfS, Axes::Both);
    let real = ShellStream::new(ShellFamily::ZerosOfS, Axes::RealOnly);
    for r in [10.0, 100.0, 1000.0] {
        let s_full = lindelof_sum(&full, 2, r)?;
        let s_real = lindelof_sum(&real, 2, r)?;
        println!("r = {r:>7}: |S_full| = {:.1e}  S_real = {:.6}", s_full.norm(), s_real.re);
    }
    let cfg = RadialConfig::default();
    println!("{}", lindelof_check(&full, 2, 1000.0, &cfg)?.to_table());

    let sector = gen_zeros_of_s(300.0)?.filter(|z| z.im == 0.0).rotated(0.3);
    println!("{}", sector_lemma_demo(&sector, 0.3, 0.0, &cfg)?.to_table());
    Ok(())
}
