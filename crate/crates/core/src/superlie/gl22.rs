//! The named basis of `gl(2|2)`:
//!
//! ```text
//! [ *    X1   eta11 eta12 ]
//! [ Y1   *    eta21 eta22 ]
//! [ xi11 xi12 *     X2    ]
//! [ xi21 xi22 Y2    *     ]
//! ```
//!
//! with diagonal units `h1..h4`, and its reference superbracket table.

use num_traits::Zero;

use super::algebra::{matrix_unit, Lin, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactpoly::Scalar;

/// Label and 1-based matrix position of each named element.
pub const NAMED: [(&str, usize, usize); 16] = [
    ("h1", 1, 1),
    ("h2", 2, 2),
    ("h3", 3, 3),
    ("h4", 4, 4),
    ("X1", 1, 2),
    ("Y1", 2, 1),
    ("X2", 3, 4),
    ("Y2", 4, 3),
    ("eta11", 1, 3),
    ("eta12", 1, 4),
    ("eta21", 2, 3),
    ("eta22", 2, 4),
    ("xi11", 3, 1),
    ("xi12", 3, 2),
    ("xi21", 4, 1),
    ("xi22", 4, 2),
];

/// `p⁻`, then `𝔨`, then `p⁺`. Products `ξ·η` of `S(p⁻)` and `S(p⁺)`
/// monomials are already normal ordered in this order.
pub const SHIMURA_ORDER: [&str; 16] = [
    "Y1", "Y2", "eta21", "xi21", "h1", "h2", "h3", "h4", "eta11", "eta22", "xi11", "xi22", "X1", "X2", "eta12", "xi12",
];

/// `g_{-1}`, then `g_0`, then `g_1`: the order used for Kac modules.
pub const KAC_ORDER: [&str; 16] = [
    "xi11", "xi12", "xi21", "xi22", "h1", "h2", "h3", "h4", "X1", "Y1", "X2", "Y2", "eta11", "eta12", "eta21", "eta22",
];

pub const K_LABELS: [&str; 8] = ["h1", "h2", "h3", "h4", "eta11", "eta22", "xi11", "xi22"];
pub const P_PLUS: [&str; 4] = ["X1", "X2", "eta12", "xi12"];
pub const P_MINUS: [&str; 4] = ["Y1", "Y2", "eta21", "xi21"];

pub const TABLE_ROWS: [&str; 8] = ["eta11", "eta12", "eta21", "eta22", "X1", "X2", "Y1", "Y2"];
pub const TABLE_COLS: [&str; 8] = ["xi11", "xi12", "xi21", "xi22", "X1", "X2", "Y1", "Y2"];

/// Reference values of `[row, col]`; `<abcd>` is `diag(a, b, c, d)`.
pub const TABLE: [[&str; 8]; 8] = [
    ["<1010>", "X1", "Y2", "0", "0", "eta12", "-eta21", "0"],
    ["X2", "0", "<1001>", "X1", "0", "0", "-eta22", "eta11"],
    ["Y1", "<0110>", "0", "Y2", "-eta11", "eta22", "0", "0"],
    ["0", "X2", "Y1", "<0101>", "-eta12", "0", "0", "eta21"],
    ["-xi12", "0", "-xi22", "0", "0", "0", "<1(-1)00>", "0"],
    ["0", "0", "xi11", "xi12", "0", "0", "0", "<001(-1)>"],
    ["0", "-xi11", "0", "-xi21", "<(-1)100>", "0", "0", "0"],
    ["xi21", "xi22", "0", "0", "0", "<00(-1)1>", "0", "0"],
];

/// `gl(2|2)` with its basis in the given label order.
pub fn gl22_in_order(order: &[&str]) -> Result<SuperAlgebra> {
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for name in order {
        let &(l, i, j) = NAMED
            .iter()
            .find(|(l, _, _)| l == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown gl(2|2) label {name}")))?;
        labels.push(l.to_string());
        mats.push(matrix_unit(4, i - 1, j - 1));
    }
    SuperAlgebra::from_matrices(labels, mats, 2)
}

pub fn gl22() -> SuperAlgebra {
    let order: Vec<&str> = NAMED.iter().map(|(l, _, _)| *l).collect();
    gl22_in_order(&order).expect("named basis spans gl(2|2)")
}

/// Parses a table entry into a combination of basis elements of `alg`.
pub fn parse_entry(alg: &SuperAlgebra, s: &str) -> Result<Lin> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    if let Some(body) = s.strip_prefix('<').and_then(|b| b.strip_suffix('>')) {
        let mut vals = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("(-1)") {
                vals.push(-1);
                rest = r;
            } else {
                let c = rest.chars().next().unwrap();
                vals.push(c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad diagonal `{s}`")))? as i64);
                rest = &rest[c.len_utf8()..];
            }
        }
        if vals.len() != 4 {
            return Err(Error::Parse(format!("diagonal `{s}` needs four entries")));
        }
        let mut out = Vec::new();
        for (k, v) in vals.iter().enumerate() {
            if *v != 0 {
                let idx = alg.index(&format!("h{}", k + 1)).ok_or_else(|| Error::Parse("missing h".into()))?;
                out.push((idx, Scalar::int(*v)));
            }
        }
        out.sort_by_key(|(i, _)| *i);
        return Ok(out);
    }
    let (sign, name) = match s.strip_prefix('-') {
        Some(n) => (-1, n),
        None => (1, s),
    };
    let idx = alg.index(name).ok_or_else(|| Error::Parse(format!("unknown label `{name}`")))?;
    Ok(vec![(idx, Scalar::int(sign))])
}

/// One mismatch between the computed bracket and the reference table.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TableMismatch {
    pub row: String,
    pub col: String,
    pub expected: String,
    pub computed: String,
}

fn fmt_lin(alg: &SuperAlgebra, l: &Lin) -> String {
    if l.is_empty() {
        return "0".into();
    }
    l.iter().map(|(i, c)| format!("{c}*{}", alg.label(*i))).collect::<Vec<_>>().join(" + ")
}

/// Compares all 64 table entries with brackets computed from matrices.
pub fn check_bracket_table() -> Result<Vec<TableMismatch>> {
    let alg = gl22();
    let mut bad = Vec::new();
    for (r, row) in TABLE_ROWS.iter().enumerate() {
        for (c, col) in TABLE_COLS.iter().enumerate() {
            let mut want = parse_entry(&alg, TABLE[r][c])?;
            want.sort_by_key(|(i, _)| *i);
            let got = alg.bracket(alg.index(row).unwrap(), alg.index(col).unwrap()).clone();
            if got != want {
                bad.push(TableMismatch {
                    row: row.to_string(),
                    col: col.to_string(),
                    expected: fmt_lin(&alg, &want),
                    computed: fmt_lin(&alg, &got),
                });
            }
        }
    }
    Ok(bad)
}

fn bracket_lin(alg: &SuperAlgebra, a: &Lin, b: &Lin) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); alg.dim()];
    for (i, x) in a {
        for (j, y) in b {
            for (k, z) in alg.bracket(*i, *j) {
                out[*k] += &(&(x * y) * z);
            }
        }
    }
    out
}

/// Triples `(a, b, c)` of basis indices violating the super Jacobi identity
/// `[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]`.
pub fn super_jacobi_violations(alg: &SuperAlgebra) -> Vec<(usize, usize, usize)> {
    let n = alg.dim();
    let as_lin = |v: Vec<Scalar>| -> Lin { v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect() };
    let unit = |i: usize| -> Lin { vec![(i, Scalar::from(1))] };
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = alg.bracket(a, b).clone();
            for c in 0..n {
                let lhs = bracket_lin(alg, &unit(a), alg.bracket(b, c));
                let t1 = bracket_lin(alg, &ab, &unit(c));
                let t2 = bracket_lin(alg, &unit(b), alg.bracket(a, c));
                let sign = if alg.is_odd(a) && alg.is_odd(b) { Scalar::from(-1) } else { Scalar::from(1) };
                let rhs: Vec<Scalar> = t1.iter().zip(&t2).map(|(x, y)| x + &(&sign * y)).collect();
                if as_lin(lhs) != as_lin(rhs) {
                    bad.push((a, b, c));
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_matrices() {
        assert!(check_bracket_table().unwrap().is_empty());
    }

    #[test]
    fn jacobi_holds() {
        assert!(super_jacobi_violations(&gl22()).is_empty());
    }

    #[test]
    fn parse_diagonals() {
        let alg = gl22();
        let l = parse_entry(&alg, "<1(-1)00>").unwrap();
        assert_eq!(l, vec![(0, Scalar::from(1)), (1, Scalar::from(-1))]);
        assert!(parse_entry(&alg, "<12>").is_err());
        assert!(parse_entry(&alg, "Z9").is_err());
    }

    #[test]
    fn orders_are_permutations() {
        for order in [SHIMURA_ORDER, KAC_ORDER] {
            assert_eq!(gl22_in_order(&order).unwrap().dim(), 16);
        }
    }
}
