//! Index pairings ⟨ℱ_{h,r}, [P_m(α)]⟩: closed form against a direct count
//! over the truncated Hilbert space, written as CSV.

use qwps::config::RunConfig;
use qwps::fredholm::{dual_family, pairing_table, PairingReport};

fn main() -> qwps::Result<()> {
    let p = [2u32, 3, 1];
    let rows = pairing_table(&p, 2, 2, 3, &RunConfig::default())?;
    println!("{}", PairingReport::CSV_HEADER);
    for r in rows.iter().filter(|r| r.formula_value != 0) {
        println!("{}", r.to_csv_row());
    }
    println!("# {} rows, {} disagreements", rows.len(), rows.iter().filter(|r| !r.agrees).count());

    let d = dual_family(&p, 0.5)?;
    println!("# dual family:");
    for (label, row) in d.rows.iter().zip(&d.matrix) {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>3}", v.round() as i64)).collect();
        println!("# h={} r={:?}: {}", label.h, label.r, cells.join(""));
    }
    Ok(())
}
