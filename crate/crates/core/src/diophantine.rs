//! Possible rowsums of `B, C, D`: solutions of `x² + y² + z² = 4n - 1`
//! with `x ≡ y ≡ z ≡ n (mod 4)`.

use std::collections::BTreeSet;

use crate::error::{invalid, Error, Result};

/// Signed rowsums of the three symmetric rows, sorted ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowsumTriple {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl RowsumTriple {
    pub fn new(mut v: [i32; 3]) -> Self {
        v.sort_unstable();
        RowsumTriple {
            x: v[0],
            y: v[1],
            z: v[2],
        }
    }

    pub fn as_array(&self) -> [i32; 3] {
        [self.x, self.y, self.z]
    }

    pub fn contains(&self, value: i32) -> bool {
        self.as_array().contains(&value)
    }
}

fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// All `{|x|, |y|, |z|}` with `x² + y² + z² = 4n - 1`, each sorted ascending.
pub fn three_squares(n: u64) -> BTreeSet<[u32; 3]> {
    let target = 4 * n - 1;
    let mut out = BTreeSet::new();
    let mut x = 0;
    while 3 * x * x <= target {
        let mut y = x;
        while x * x + 2 * y * y <= target {
            let rest = target - x * x - y * y;
            let z = isqrt(rest);
            if z * z == rest {
                out.insert([x as u32, y as u32, z as u32]);
            }
            y += 1;
        }
        x += 1;
    }
    out
}

/// Applies the sign condition `row ≡ n (mod 4)` to every decomposition.
pub fn signed_rowsums(n: u64) -> Result<BTreeSet<RowsumTriple>> {
    if n.is_multiple_of(2) || n == 0 {
        return invalid(format!("order must be odd and positive, got {n}"));
    }
    let residue = (n % 4) as i32;
    three_squares(n)
        .into_iter()
        .map(|mags| {
            let mut signed = [0i32; 3];
            for (slot, &mag) in signed.iter_mut().zip(&mags) {
                let mag = mag as i32;
                if mag % 2 == 0 {
                    return Err(Error::Internal(format!(
                        "even rowsum magnitude {mag} for order {n}"
                    )));
                }
                *slot = if mag.rem_euclid(4) == residue { mag } else { -mag };
            }
            Ok(RowsumTriple::new(signed))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain triple loop over `0 <= x <= y <= z <= ⌈√(4n-1)⌉`.
    fn triple_loop(n: u64) -> BTreeSet<[u32; 3]> {
        let target = 4 * n - 1;
        let bound = (target as f64).sqrt().ceil() as u64;
        let mut out = BTreeSet::new();
        for x in 0..=bound {
            for y in x..=bound {
                for z in y..=bound {
                    if x * x + y * y + z * z == target {
                        out.insert([x as u32, y as u32, z as u32]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn order_69_decompositions() {
        let got: Vec<_> = three_squares(69).into_iter().collect();
        assert_eq!(got, vec![[1, 7, 15], [5, 5, 15], [5, 9, 13]]);
    }

    #[test]
    fn small_orders() {
        assert_eq!(three_squares(3).into_iter().collect::<Vec<_>>(), vec![[1, 1, 3]]);
        assert_eq!(
            three_squares(15).into_iter().collect::<Vec<_>>(),
            vec![[1, 3, 7], [3, 5, 5]]
        );
    }

    #[test]
    fn signs_follow_order_mod_4() {
        let t = |v| RowsumTriple::new(v);
        assert_eq!(
            signed_rowsums(69).unwrap().into_iter().collect::<Vec<_>>(),
            vec![t([-15, -7, 1]), t([-15, 5, 5]), t([5, 9, 13])]
        );
        assert_eq!(
            signed_rowsums(3).unwrap().into_iter().collect::<Vec<_>>(),
            vec![t([-1, -1, 3])]
        );
        assert_eq!(
            signed_rowsums(15).unwrap().into_iter().collect::<Vec<_>>(),
            vec![t([-5, -5, 3]), t([-1, 3, 7])]
        );
        assert!(signed_rowsums(4).is_err());
    }

    #[test]
    fn matches_triple_loop_up_to_100() {
        for n in (1..=100).step_by(2) {
            assert_eq!(three_squares(n), triple_loop(n), "n = {n}");
            for t in signed_rowsums(n).unwrap() {
                let [x, y, z] = t.as_array();
                assert_eq!((x * x + y * y + z * z) as u64, 4 * n - 1);
                for v in [x, y, z] {
                    assert_eq!(v.rem_euclid(4) as u64, n % 4);
                }
                assert!(x <= y && y <= z);
            }
        }
    }
}
