//! Drive the command-line layer in-process: generate a points file, check
//! it, re-run from the emitted manifest, and bundle the outputs.

use fockzero::cli::run;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("fockzero-example");
    std::fs::create_dir_all(&dir)?;
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();

    let code = run(["fockzero", "gen", "--family", "gamma-nu", "--nu", "0.5", "--radius", "200", "--delta", "inverse-square:0.05", "--out", &p("lat.points.json")]);
    println!("gen -> {code}");
    let code = run(["fockzero", "check", "--theorem", "1", "--points", &p("lat.points.json"), "--p", "2", "--out", &p("lat.report.json")]);
    println!("check -> {code}");
    let code = run(["fockzero", "gen", "--manifest", &p("lat.points.manifest.json"), "--out", &p("again.points.json")]);
    let same = std::fs::read(p("lat.points.json"))? == std::fs::read(p("again.points.json"))?;
    println!("gen from manifest -> {code}, identical output: {same}");
    let code = run(["fockzero", "report", &p("lat.report.json"), &p("lat.points.json"), "--out", &p("bundle.json")]);
    println!("report -> {code}");
    Ok(())
}
