fn main() {
    let t0 = std::time::Instant::now();
    let report = homlat_core::atlas::verify::verify_all(8).unwrap();
    let mut bad = 0;
    for r in &report.rows {
        if !r.pass() {
            bad += 1;
            println!("FAIL row {} n={} ({} / {})", r.row_no, r.param_n, r.ambient, r.sub);
            for c in &r.checks { if !c.pass { println!("   {}: {}", c.name, c.details); } }
        }
    }
    for c in report.k_const_checks.iter().chain(report.distinguished_checks.iter()) {
        if !c.pass { bad += 1; println!("FAIL {}: {}", c.name, c.details); }
    }
    println!("rows checked: {}, failures: {}, elapsed: {:?}", report.rows.len(), bad, t0.elapsed());
}
