//! Exact Jordan-Chevalley decomposition of a rational matrix.

use contactlie::compat::{jc_postconditions, jordan_chevalley_q, minimal_polynomial};
use contactlie::linalg::QMatrix;
use contactlie::multilinear::Endo;
use contactlie::scalar::ScalarContext;

fn main() {
    let a = QMatrix::from_i64(&[
        vec![2, 1, 0, 0],
        vec![0, 2, 0, 0],
        vec![0, 0, 0, -1],
        vec![0, 0, 1, 0],
    ]);
    let (s, n) = jordan_chevalley_q(&a);
    println!("minimal polynomial: {}", minimal_polynomial(&a));
    let ctx = ScalarContext::empty();
    println!("S =\n{}", Endo::from_qmatrix(&ctx, &s));
    println!("N =\n{}", Endo::from_qmatrix(&ctx, &n));
    println!("postconditions hold: {}", jc_postconditions(&a, &s, &n));
}
