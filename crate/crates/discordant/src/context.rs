//! Semigroup contexts and their element encoding.
//!
//! Elements of every built-in semigroup are encoded as short tuples of
//! signed 64-bit integers, so window counting stays in exact integer
//! arithmetic. The Heisenberg group H₃(ℤ) is the set of triples (a, b, c)
//! under (a₁,b₁,c₁)·(a₂,b₂,c₂) = (a₁+a₂, b₁+b₂, a₁b₂+c₁+c₂), i.e. the
//! upper unitriangular 3×3 integer matrices with c in the corner. Free
//! words over a finite alphabet are encoded as tuples of letter indices.

use smallvec::SmallVec;
use std::fmt;

use crate::error::{Error, Result};

/// An encoded semigroup element: a tuple of signed 64-bit coordinates.
///
/// Tuples of up to four coordinates are stored inline, which keeps window
/// scans allocation-free for every built-in context except high-dimensional
/// ℤᵈ and long free words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub SmallVec<[i64; 4]>);

impl Element {
    pub fn int(k: i64) -> Self {
        Element(SmallVec::from_slice(&[k]))
    }

    pub fn pair(a: i64, b: i64) -> Self {
        Element(SmallVec::from_slice(&[a, b]))
    }

    pub fn triple(a: i64, b: i64, c: i64) -> Self {
        Element(SmallVec::from_slice(&[a, b, c]))
    }

    pub fn from_slice(v: &[i64]) -> Self {
        Element(SmallVec::from_slice(v))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// The single coordinate of a ℕ/ℤ element.
    ///
    /// Panics when the element is not one-dimensional; oracle/context
    /// pairings are established at construction time, so a mismatch here is
    /// a programming error rather than user input.
    pub fn as_int(&self) -> i64 {
        assert!(
            self.0.len() == 1,
            "expected a 1-dimensional element, got arity {}",
            self.0.len()
        );
        self.0[0]
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", self.0.as_slice())
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A countable semigroup with a fixed element encoding.
///
/// All built-in contexts are cancellative. Følner windows exist for every
/// context except `FreeWords` (the free semigroup is not amenable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupContext {
    /// (ℕ, +) with ℕ = {1, 2, 3, ...}.
    NatAdd,
    /// (ℤ, +).
    IntAdd,
    /// (ℤᵈ, +) for d ≥ 1.
    IntVecAdd(usize),
    /// The discrete Heisenberg group H₃(ℤ).
    Heisenberg,
    /// The free semigroup on a finite alphabet, elements encoded as tuples
    /// of letter indices. No Følner windows.
    FreeWords(usize),
}

impl GroupContext {
    /// Coordinate count of encoded elements, or `None` for variable-length
    /// encodings (free words).
    pub fn arity(&self) -> Option<usize> {
        match self {
            GroupContext::NatAdd | GroupContext::IntAdd => Some(1),
            GroupContext::IntVecAdd(d) => Some(*d),
            GroupContext::Heisenberg => Some(3),
            GroupContext::FreeWords(_) => None,
        }
    }

    pub fn is_cancellative(&self) -> bool {
        true
    }

    pub fn supports_windows(&self) -> bool {
        !matches!(self, GroupContext::FreeWords(_))
    }

    /// The identity element where one exists in the encoding. For ℕ the
    /// zero tuple is not itself an element of the semigroup, but it acts as
    /// the identity shift and is accepted wherever a shift is expected.
    pub fn identity(&self) -> Element {
        match self {
            GroupContext::NatAdd | GroupContext::IntAdd => Element::int(0),
            GroupContext::IntVecAdd(d) => Element(SmallVec::from_elem(0, *d)),
            GroupContext::Heisenberg => Element::triple(0, 0, 0),
            GroupContext::FreeWords(_) => Element(SmallVec::new()),
        }
    }

    fn check_arity(&self, g: &Element) -> Result<()> {
        match self.arity() {
            Some(d) if g.arity() != d => Err(Error::argument(format!(
                "element arity {} does not match context {:?}",
                g.arity(),
                self
            ))),
            _ => Ok(()),
        }
    }

    /// The semigroup operation on encoded elements.
    pub fn op(&self, g: &Element, h: &Element) -> Element {
        debug_assert!(self.check_arity(g).is_ok() && self.check_arity(h).is_ok());
        match self {
            GroupContext::NatAdd | GroupContext::IntAdd => Element::int(g.0[0] + h.0[0]),
            GroupContext::IntVecAdd(_) => {
                Element(g.0.iter().zip(h.0.iter()).map(|(a, b)| a + b).collect())
            }
            GroupContext::Heisenberg => {
                let (a1, b1, c1) = (g.0[0], g.0[1], g.0[2]);
                let (a2, b2, c2) = (h.0[0], h.0[1], h.0[2]);
                Element::triple(a1 + a2, b1 + b2, a1 * b2 + c1 + c2)
            }
            GroupContext::FreeWords(_) => {
                let mut out = g.0.clone();
                out.extend_from_slice(&h.0);
                Element(out)
            }
        }
    }

    /// The unique `y` with `op(g, y) = x`, when it exists. Uniqueness is
    /// guaranteed by left cancellativity.
    pub fn left_quotient(&self, g: &Element, x: &Element) -> Option<Element> {
        match self {
            GroupContext::NatAdd => {
                let y = x.0[0] - g.0[0];
                (y >= 1).then(|| Element::int(y))
            }
            GroupContext::IntAdd => Some(Element::int(x.0[0] - g.0[0])),
            GroupContext::IntVecAdd(_) => Some(Element(
                x.0.iter().zip(g.0.iter()).map(|(a, b)| a - b).collect(),
            )),
            GroupContext::Heisenberg => {
                // g·y = x  with  y = (a, b, c):
                //   a = x.a - g.a,  b = x.b - g.b,  c = x.c - g.c - g.a·b
                let a = x.0[0] - g.0[0];
                let b = x.0[1] - g.0[1];
                let c = x.0[2] - g.0[2] - g.0[0] * b;
                Some(Element::triple(a, b, c))
            }
            GroupContext::FreeWords(_) => {
                if x.0.len() >= g.0.len() && x.0[..g.0.len()] == g.0[..] {
                    Some(Element(SmallVec::from_slice(&x.0[g.0.len()..])))
                } else {
                    None
                }
            }
        }
    }

    /// Whether the encoded tuple is a valid element of this semigroup
    /// (for ℕ: coordinate ≥ 1; free words: letter indices in range).
    pub fn is_element(&self, g: &Element) -> bool {
        match self {
            GroupContext::NatAdd => g.arity() == 1 && g.0[0] >= 1,
            GroupContext::IntAdd => g.arity() == 1,
            GroupContext::IntVecAdd(d) => g.arity() == *d,
            GroupContext::Heisenberg => g.arity() == 3,
            GroupContext::FreeWords(s) => g.0.iter().all(|&l| l >= 0 && (l as usize) < *s),
        }
    }

    /// Canonical scan order used by the search procedures: 1, 2, 3, ... for
    /// ℕ and 0, 1, -1, 2, -2, ... for ℤ. Higher-dimensional contexts scan
    /// window shells of growing index.
    pub fn scan_iter(&self) -> Box<dyn Iterator<Item = Element> + Send + '_> {
        match self {
            GroupContext::NatAdd => Box::new((1i64..).map(Element::int)),
            GroupContext::IntAdd => Box::new((0i64..).flat_map(|k| {
                if k == 0 {
                    vec![Element::int(0)]
                } else {
                    vec![Element::int(k), Element::int(-k)]
                }
            })),
            GroupContext::IntVecAdd(d) => {
                let d = *d;
                Box::new(CubeShells::new(d))
            }
            GroupContext::Heisenberg => Box::new(HeisenbergShells::new()),
            GroupContext::FreeWords(_) => Box::new(std::iter::empty()),
        }
    }
}

/// Shell enumeration of ℤᵈ: all points with max-norm exactly n, for n = 0, 1, 2, ...
struct CubeShells {
    dim: usize,
    shell: i64,
    buf: Vec<Element>,
    pos: usize,
}

impl CubeShells {
    fn new(dim: usize) -> Self {
        CubeShells {
            dim,
            shell: -1,
            buf: Vec::new(),
            pos: 0,
        }
    }

    fn fill_shell(&mut self) {
        self.shell += 1;
        self.buf.clear();
        self.pos = 0;
        let n = self.shell;
        let mut coords = vec![-n; self.dim];
        loop {
            if coords.iter().any(|&c| c.abs() == n) {
                self.buf.push(Element::from_slice(&coords));
            }
            let mut i = 0;
            loop {
                if i == self.dim {
                    return;
                }
                coords[i] += 1;
                if coords[i] > n {
                    coords[i] = -n;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }
}

impl Iterator for CubeShells {
    type Item = Element;
    fn next(&mut self) -> Option<Element> {
        while self.pos >= self.buf.len() {
            self.fill_shell();
        }
        let e = self.buf[self.pos].clone();
        self.pos += 1;
        Some(e)
    }
}

/// Shell enumeration of the Heisenberg Følner boxes: elements of box n not
/// in box n-1, for n = 1, 2, ...
struct HeisenbergShells {
    shell: i64,
    buf: Vec<Element>,
    pos: usize,
}

impl HeisenbergShells {
    fn new() -> Self {
        HeisenbergShells {
            shell: 0,
            buf: Vec::new(),
            pos: 0,
        }
    }

    fn in_box(e: (i64, i64, i64), n: i64) -> bool {
        e.0.abs() <= n && e.1.abs() <= n && e.2.abs() <= n * n
    }

    fn fill_shell(&mut self) {
        self.shell += 1;
        self.buf.clear();
        self.pos = 0;
        let n = self.shell;
        for a in -n..=n {
            for b in -n..=n {
                for c in -n * n..=n * n {
                    if !Self::in_box((a, b, c), n - 1) {
                        self.buf.push(Element::triple(a, b, c));
                    }
                }
            }
        }
    }
}

impl Iterator for HeisenbergShells {
    type Item = Element;
    fn next(&mut self) -> Option<Element> {
        while self.pos >= self.buf.len() {
            self.fill_shell();
        }
        let e = self.buf[self.pos].clone();
        self.pos += 1;
        Some(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prng::SplitMix64;

    fn random_element(ctx: &GroupContext, rng: &mut SplitMix64, span: i64) -> Element {
        let d = ctx.arity().unwrap_or(3);
        let coords: SmallVec<[i64; 4]> = (0..d)
            .map(|_| rng.next_range(2 * span as u64 + 1) as i64 - span)
            .collect();
        match ctx {
            GroupContext::NatAdd => Element::int(rng.next_range(span as u64) as i64 + 1),
            GroupContext::FreeWords(s) => {
                let len = rng.next_range(5) as usize + 1;
                Element(
                    (0..len)
                        .map(|_| rng.next_range(*s as u64) as i64)
                        .collect(),
                )
            }
            _ => Element(coords),
        }
    }

    #[test]
    fn op_is_associative_on_sampled_triples() {
        let contexts = [
            GroupContext::NatAdd,
            GroupContext::IntAdd,
            GroupContext::IntVecAdd(3),
            GroupContext::Heisenberg,
            GroupContext::FreeWords(2),
        ];
        let mut rng = SplitMix64::new(7);
        for ctx in &contexts {
            for _ in 0..200 {
                let g = random_element(ctx, &mut rng, 50);
                let h = random_element(ctx, &mut rng, 50);
                let k = random_element(ctx, &mut rng, 50);
                assert_eq!(
                    ctx.op(&ctx.op(&g, &h), &k),
                    ctx.op(&g, &ctx.op(&h, &k)),
                    "associativity failed in {ctx:?}"
                );
            }
        }
    }

    #[test]
    fn op_is_cancellative_on_sampled_triples() {
        let contexts = [
            GroupContext::IntAdd,
            GroupContext::IntVecAdd(2),
            GroupContext::Heisenberg,
            GroupContext::FreeWords(3),
        ];
        let mut rng = SplitMix64::new(11);
        for ctx in &contexts {
            for _ in 0..200 {
                let g = random_element(ctx, &mut rng, 50);
                let h1 = random_element(ctx, &mut rng, 50);
                let h2 = random_element(ctx, &mut rng, 50);
                if h1 != h2 {
                    assert_ne!(ctx.op(&g, &h1), ctx.op(&g, &h2));
                    assert_ne!(ctx.op(&h1, &g), ctx.op(&h2, &g));
                }
            }
        }
    }

    #[test]
    fn left_quotient_inverts_op() {
        let contexts = [
            GroupContext::NatAdd,
            GroupContext::IntAdd,
            GroupContext::IntVecAdd(2),
            GroupContext::Heisenberg,
            GroupContext::FreeWords(2),
        ];
        let mut rng = SplitMix64::new(13);
        for ctx in &contexts {
            for _ in 0..200 {
                let g = random_element(ctx, &mut rng, 40);
                let y = random_element(ctx, &mut rng, 40);
                let x = ctx.op(&g, &y);
                assert_eq!(ctx.left_quotient(&g, &x), Some(y.clone()));
            }
        }
    }

    #[test]
    fn heisenberg_matches_matrix_model() {
        // (a, b, c) ↔ upper unitriangular matrix with rows (1 a c; 0 1 b; 0 0 1).
        let ctx = GroupContext::Heisenberg;
        let mul = |x: [[i64; 3]; 3], y: [[i64; 3]; 3]| {
            let mut z = [[0i64; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    z[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
                }
            }
            z
        };
        let to_mat = |e: &Element| {
            [
                [1, e.0[0], e.0[2]],
                [0, 1, e.0[1]],
                [0, 0, 1],
            ]
        };
        let mut rng = SplitMix64::new(17);
        for _ in 0..100 {
            let g = random_element(&ctx, &mut rng, 20);
            let h = random_element(&ctx, &mut rng, 20);
            let prod = ctx.op(&g, &h);
            assert_eq!(to_mat(&prod), mul(to_mat(&g), to_mat(&h)));
        }
    }

    #[test]
    fn scan_order_for_int_is_balanced() {
        let ctx = GroupContext::IntAdd;
        let first: Vec<i64> = ctx.scan_iter().take(7).map(|e| e.as_int()).collect();
        assert_eq!(first, vec![0, 1, -1, 2, -2, 3, -3]);
    }

    #[test]
    fn cube_shells_cover_without_duplicates() {
        let ctx = GroupContext::IntVecAdd(2);
        let pts: Vec<Element> = ctx.scan_iter().take(25).collect();
        let set: std::collections::HashSet<_> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 25);
        // shells 0..=2 are exactly the 5x5 cube
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                assert!(set.contains(&Element::pair(a, b)));
            }
        }
    }
}
