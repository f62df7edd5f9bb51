//! Every independent check on the two published quads.

use goodmat::known;
use goodmat::pipeline::certify;
use goodmat::spectral::psd_profile;

fn main() {
    for quad in [known::order_27(), known::order_57()] {
        let n = quad.order();
        let rows = quad.to_row_quad();
        let certs = certify(&rows);
        println!("order {n}: {certs:?}");

        let rowsums: Vec<i32> = rows.rows().iter().map(|r| r.rowsum()).collect();
        println!("  rowsums {rowsums:?}");
        let peak = quad
            .rows()
            .iter()
            .map(|r| psd_profile(r).max())
            .fold(0.0, f64::max);
        println!("  largest single-row PSD {peak:.3} (bound {})", 4 * n);
        assert!(certs.all_pass());
    }
}
