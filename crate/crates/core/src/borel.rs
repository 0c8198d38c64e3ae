//! ϵδ-chains, marked weights and odd reflections for `gl(2p|2q)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{is_hook, lambda_natural, Partition, Profile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Marker {
    /// `ϵ`-type, displayed `•`.
    Bullet,
    /// `δ`-type, displayed `×`.
    Cross,
}

impl Marker {
    fn glyph(self) -> char {
        match self {
            Marker::Bullet => '•',
            Marker::Cross => '×',
        }
    }
}

/// A character `ϵ_i^±` or `δ_j^±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub marker: Marker,
    pub plus: bool,
    pub index: usize,
}

impl Character {
    pub fn eps(index: usize, plus: bool) -> Self {
        Character { marker: Marker::Bullet, plus, index }
    }

    pub fn delta(index: usize, plus: bool) -> Self {
        Character { marker: Marker::Cross, plus, index }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.marker == Marker::Bullet { 'ϵ' } else { 'δ' };
        write!(f, "{name}{}{}", self.index, if self.plus { '+' } else { '-' })
    }
}

/// Highest weight with respect to the Borel subalgebra of its chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedWeight {
    pub chain: Vec<Character>,
    pub coeffs: Vec<i64>,
}

fn join_runs<T>(chain: &[Character], items: &[T], show: impl Fn(&Character, &T) -> String) -> String {
    let mut s = String::new();
    for (i, (c, x)) in chain.iter().zip(items).enumerate() {
        if i > 0 {
            s.push_str(if chain[i - 1].marker != c.marker { " | " } else { ", " });
        }
        s.push_str(&show(c, x));
    }
    s
}

impl MarkedWeight {
    pub fn new(chain: Vec<Character>, coeffs: Vec<i64>) -> Result<Self> {
        if chain.len() != coeffs.len() {
            return Err(Error::InvalidInput(format!("chain of length {} with {} coefficients", chain.len(), coeffs.len())));
        }
        for (i, c) in chain.iter().enumerate() {
            if chain[..i].contains(c) {
                return Err(Error::InvalidInput(format!("character {c} repeated in chain")));
            }
        }
        Ok(MarkedWeight { chain, coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn chain_string(&self) -> String {
        format!("[{}]", join_runs(&self.chain, &self.chain, |c, _| c.to_string()))
    }

    /// Coefficient of a character, wherever it sits in the chain.
    pub fn coeff_of(&self, c: Character) -> Option<i64> {
        self.chain.iter().position(|&d| d == c).map(|i| self.coeffs[i])
    }
}

impl fmt::Display for MarkedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join_runs(&self.chain, &self.coeffs, |c, x| format!("{}{x}", c.marker.glyph())))
    }
}

/// The chain `[ϵ1- … ϵp- | δ1- … δq- δq+ … δ1+ | ϵp+ … ϵ1+]`.
pub fn natural_chain(prof: Profile) -> Vec<Character> {
    let (p, q) = (prof.p, prof.q);
    let mut c: Vec<Character> = (1..=p).map(|i| Character::eps(i, false)).collect();
    c.extend((1..=q).map(|j| Character::delta(j, false)));
    c.extend((1..=q).rev().map(|j| Character::delta(j, true)));
    c.extend((1..=p).rev().map(|i| Character::eps(i, true)));
    c
}

/// `-λ^♮ = (λ_1 … λ_p | ν_1 … ν_q, -ν_q … -ν_1 | -λ_p … -λ_1)` over the
/// natural chain, with `ν_j = ⟨λ'_j - p⟩`.
pub fn minus_lambda_natural(lambda: &Partition, prof: Profile) -> Result<MarkedWeight> {
    let nat = lambda_natural(lambda, prof)?;
    let mut coeffs = nat.b.clone();
    coeffs.extend(nat.f.iter().copied());
    coeffs.extend(nat.f.iter().rev().map(|x| -x));
    coeffs.extend(nat.b.iter().rev().map(|x| -x));
    MarkedWeight::new(natural_chain(prof), coeffs)
}

/// Odd reflection at the adjacent pair `(pos, pos + 1)`.
///
/// `(×x | •y)` becomes `(•y | ×x)` if `x = -y` and `(•y+1 | ×x-1)`
/// otherwise; `(•y | ×x)` becomes `(×x | •y)` or `(×x+1 | •y-1)`.
pub fn odd_reflect(w: &MarkedWeight, pos: usize) -> Result<MarkedWeight> {
    if pos + 1 >= w.len() {
        return Err(Error::InvalidInput(format!("position {pos} out of range")));
    }
    let (l, r) = (w.chain[pos].marker, w.chain[pos + 1].marker);
    if l == r {
        return Err(Error::InvalidInput(format!("positions {pos}, {} carry the same marker", pos + 1)));
    }
    let mut out = w.clone();
    out.chain.swap(pos, pos + 1);
    let (a, b) = (w.coeffs[pos], w.coeffs[pos + 1]);
    let (x, y) = if l == Marker::Cross { (a, b) } else { (b, a) };
    let (new_l, new_r) = if x == -y {
        (b, a)
    } else if l == Marker::Cross {
        (y + 1, x - 1)
    } else {
        (x + 1, y - 1)
    };
    out.coeffs[pos] = new_l;
    out.coeffs[pos + 1] = new_r;
    Ok(out)
}

/// Coefficients of the `ϵ` characters, and separately of the `δ`
/// characters, are weakly decreasing along the chain.
pub fn is_dominant(w: &MarkedWeight) -> bool {
    [Marker::Bullet, Marker::Cross].iter().all(|&m| {
        let seq: Vec<i64> = w.chain.iter().zip(&w.coeffs).filter(|(c, _)| c.marker == m).map(|(_, &x)| x).collect();
        seq.windows(2).all(|p| p[0] >= p[1])
    })
}

/// Moves the entry at `from` left by `steps` odd reflections, recording
/// every intermediate weight.
pub fn push_left(w: &MarkedWeight, from: usize, steps: usize, trace: &mut Vec<MarkedWeight>) -> Result<MarkedWeight> {
    let mut cur = w.clone();
    for s in 0..steps {
        cur = odd_reflect(&cur, from - s - 1)?;
        trace.push(cur.clone());
    }
    Ok(cur)
}

#[derive(Clone, Debug, Serialize)]
pub struct FdReport {
    pub lambda: Partition,
    pub p: usize,
    pub q: usize,
    /// `-λ^♮`, every intermediate weight, and finally `λ^♯`.
    pub trace: Vec<MarkedWeight>,
    pub sharp: MarkedWeight,
    pub dominant: bool,
    /// `λ_p < q`.
    pub case_two: bool,
    /// Number of strictly positive `ν_j`.
    pub l: usize,
    pub tau1: i64,
    /// `τ_1 = l`, checked only in the second case.
    pub tau_claim: Option<bool>,
}

impl FdReport {
    pub fn passed(&self) -> bool {
        self.dominant && self.tau_claim != Some(false)
    }
}

/// Pushes `-λ_p` through the `2q` crosses to reach `λ^♯` and checks its
/// dominance.
pub fn verify_fd(lambda: &Partition, prof: Profile) -> Result<FdReport> {
    if !is_hook(lambda, prof) {
        return Err(Error::InvalidInput(format!("{lambda} is not a ({},{})-hook", prof.p, prof.q)));
    }
    let (p, q) = (prof.p, prof.q);
    let start = minus_lambda_natural(lambda, prof)?;
    let mut trace = vec![start.clone()];
    let sharp = push_left(&start, p + 2 * q, 2 * q, &mut trace)?;
    let nat = lambda_natural(lambda, prof)?;
    let l = nat.f.iter().filter(|&&x| x > 0).count();
    let tau1 = sharp.coeffs[p];
    let case_two = (lambda.part(p) as usize) < q;
    Ok(FdReport {
        lambda: lambda.clone(),
        p,
        q,
        dominant: is_dominant(&sharp),
        tau_claim: case_two.then_some(tau1 == l as i64),
        trace,
        sharp,
        case_two,
        l,
        tau1,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KacWeight {
    pub lambda: Partition,
    pub trace: Vec<MarkedWeight>,
    /// Weight over `[ϵ- … ϵ+ | δ- … δ+]`.
    pub weight: MarkedWeight,
}

impl KacWeight {
    /// Coefficients read positionally, i.e. in the standard chain
    /// `[ϵ+ … ϵ- | δ+ … δ-]` after the even conjugation.
    pub fn standard(&self) -> Vec<i64> {
        self.weight.coeffs.clone()
    }
}

/// Highest weight of `V_λ` for the distinguished Borel subalgebra, reached
/// by pushing each `ϵ+` entry left past all `δ` entries.
pub fn kac_weight(lambda: &Partition, prof: Profile) -> Result<KacWeight> {
    if !is_hook(lambda, prof) {
        return Err(Error::InvalidInput(format!("{lambda} is not a ({},{})-hook", prof.p, prof.q)));
    }
    let (p, q) = (prof.p, prof.q);
    let mut cur = minus_lambda_natural(lambda, prof)?;
    let mut trace = vec![cur.clone()];
    for k in 0..p {
        cur = push_left(&cur, p + 2 * q + k, 2 * q, &mut trace)?;
    }
    Ok(KacWeight { lambda: lambda.clone(), trace, weight: cur })
}

/// `(a, -a+2 | b-1, -b-1)` if `b ≠ a-1`, else `(a, -b | b, -a)`.
pub fn kac_weight_closed_form(a: i64, b: i64) -> [i64; 4] {
    if b != a - 1 {
        [a, -a + 2, b - 1, -b - 1]
    } else {
        [a, -b, b, -a]
    }
}

/// `λ_p > ⟨λ'_1 - p⟩`.
pub fn is_guaranteed_spherical(lambda: &Partition, prof: Profile) -> Result<bool> {
    if !is_hook(lambda, prof) {
        return Err(Error::InvalidInput(format!("{lambda} is not a ({},{})-hook", prof.p, prof.q)));
    }
    let lp = lambda.part(prof.p) as i64;
    let col = (lambda.transpose().part(1) as i64 - prof.p as i64).max(0);
    Ok(lp > col)
}
