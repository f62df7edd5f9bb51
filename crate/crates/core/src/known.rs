//! Published good matrices of orders 27 and 57, as defining rows `A, B, C, D`.

use crate::seqcore::{parse_row, DefiningQuad, SkewRow, SymRow};

pub const ORDER_27: [&str; 4] = [
    "+++++++--+++-+-+---++------",
    "+-++-+---+--++++--+---+-++-",
    "+-+++---+--+----+--+---+++-",
    "+----++-+---+--+---+-++----",
];

pub const ORDER_57: [&str; 4] = [
    "+-+---++--+--+-+-+++-------++--+++++++---+-+-++-++--+++-+",
    "+++-+--++---+---+--+-+-++++----++++-+-+--+---+---++--+-++",
    "++++---+--+--+--+-+-+----+++--+++----+-+-+--+--+--+---+++",
    "+++-++++++--+-+++-+-++----++--++----++-+-+++-+--++++++-++",
];

fn build(rows: &[&str; 4]) -> DefiningQuad {
    let sym = |s: &str| SymRow::from_seq(parse_row(s).unwrap()).unwrap();
    DefiningQuad::new(
        SkewRow::from_seq(parse_row(rows[0]).unwrap()).unwrap(),
        sym(rows[1]),
        sym(rows[2]),
        sym(rows[3]),
    )
    .unwrap()
}

pub fn order_27() -> DefiningQuad {
    build(&ORDER_27)
}

pub fn order_57() -> DefiningQuad {
    build(&ORDER_57)
}
