//! Coxeter systems with their reflection representation over an exact real
//! cyclotomic field.
//!
//! A system is described by its Coxeter matrix `m`. The bilinear form is
//! `B[s][t] = -cos(pi/m[s][t])` (with `-1` for an infinite bond and `1` on
//! the diagonal), and every generator acts on root coordinates by
//! `s(v) = v - 2 B(r_s, v) r_s`. Orders 2 and 3 contribute rational cosines,
//! so the scalar field only extends Q when some finite bond is 4 or larger;
//! the context is built from those orders, keeping simply-laced systems on
//! the fast rational path.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarContext};
use crate::trace::Alphabet;

/// A Coxeter-matrix entry: the order of the product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

pub(crate) struct SysInner {
    n: usize,
    orders: Vec<Order>,
    ctx: ScalarContext,
    /// Bilinear form, flat n*n.
    form: Vec<Scalar>,
    /// 2*B, the coefficients reflections actually use.
    two_form: Vec<Scalar>,
    /// Generator names with the commutation relation `m = 2`; this is the
    /// alphabet reduced words live over.
    alphabet: Alphabet,
}

/// A Coxeter system: generators, matrix, exact bilinear form, and the
/// induced commutation alphabet. Cheap to clone (shared handle).
#[derive(Clone)]
pub struct CoxeterSystem {
    pub(crate) inner: Arc<SysInner>,
}

/// File format of a Coxeter matrix: generator names and the symmetric order
/// matrix, with `0` standing for an infinite bond.
#[derive(Serialize, Deserialize)]
struct MatrixSpec {
    generators: Vec<String>,
    matrix: Vec<Vec<u64>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("n", &self.inner.n)
            .field("field", &self.inner.ctx)
            .finish()
    }
}

impl CoxeterSystem {
    /// Validates a Coxeter matrix and builds the system: scalar context from
    /// the finite bond orders that need an irrational cosine (4 and up),
    /// exact bilinear form, and the commutation alphabet (`m = 2`).
    // Index loops are the clearest way to walk a symmetric matrix both ways
    // (`orders[i][j]` against `orders[j][i]`).
    #[allow(clippy::needless_range_loop)]
    pub fn build(orders: &[Vec<Order>], names: Option<Vec<String>>) -> Result<CoxeterSystem> {
        let n = orders.len();
        for row in orders {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "matrix is not square: row of length {} in a rank-{n} system",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            if orders[i][i] != Order::Finite(1) {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal entry m[{i}][{i}] must be 1"
                )));
            }
            for j in 0..n {
                if orders[i][j] != orders[j][i] {
                    return Err(Error::InvalidMatrix(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
                if i != j {
                    if let Order::Finite(m) = orders[i][j] {
                        if m < 2 {
                            return Err(Error::InvalidMatrix(format!(
                                "off-diagonal entry m[{i}][{j}] = {m} must be at least 2"
                            )));
                        }
                    }
                }
            }
        }
        let names = match names {
            Some(names) => {
                if names.len() != n {
                    return Err(Error::InvalidMatrix(format!(
                        "{} generator names for a rank-{n} system",
                        names.len()
                    )));
                }
                names
            }
            None => (1..=n).map(|i| format!("s{i}")).collect(),
        };

        // cos(pi/2) = 0 and cos(pi/3) = 1/2 are rational; only larger finite
        // orders force a proper field extension.
        let irrational_orders: BTreeSet<u64> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| orders[i][j].finite())
            .filter(|&m| m >= 4)
            .map(u64::from)
            .collect();
        let ctx = ScalarContext::new(irrational_orders);

        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut form = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let entry = if i == j {
                    ctx.one()
                } else {
                    match orders[i][j] {
                        Order::Infinite => ctx.from_integer(-1),
                        Order::Finite(2) => ctx.zero(),
                        Order::Finite(3) => -ctx.from_rational(half.clone()),
                        Order::Finite(m) => {
                            // -cos(pi/m) = -(2cos(pi/m))/2, exactly; m >= 4
                            // here since 1 is diagonal-only and 2, 3 matched
                            // above.
                            ctx.two_cos_pi_over(u64::from(m)).scale(&-half.clone())
                        }
                    }
                };
                form.push(entry);
            }
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let two_form = form.iter().map(|b| b.scale(&two)).collect();

        let mut commuting = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if orders[i][j] == Order::Finite(2) {
                    commuting.push((i, j));
                }
            }
        }
        let alphabet = Alphabet::new(names, &commuting)?;

        let flat: Vec<Order> = orders.iter().flatten().copied().collect();
        Ok(CoxeterSystem {
            inner: Arc::new(SysInner {
                n,
                orders: flat,
                ctx,
                form,
                two_form,
                alphabet,
            }),
        })
    }

    /// Parses the `{"generators": [...], "matrix": [[...]]}` form, where a
    /// zero entry denotes an infinite bond.
    pub fn from_json(text: &str) -> Result<CoxeterSystem> {
        let spec: MatrixSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            input: text.chars().take(80).collect(),
            reason: e.to_string(),
        })?;
        let orders: Vec<Vec<Order>> = spec
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&m| {
                        if m == 0 {
                            Order::Infinite
                        } else {
                            Order::Finite(m as u32)
                        }
                    })
                    .collect()
            })
            .collect();
        CoxeterSystem::build(&orders, Some(spec.generators))
    }

    pub fn to_json(&self) -> String {
        let n = self.inner.n;
        let matrix: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self.order(i, j) {
                        Order::Finite(m) => u64::from(m),
                        Order::Infinite => 0,
                    })
                    .collect()
            })
            .collect();
        serde_json::to_string(&MatrixSpec {
            generators: self.inner.alphabet.names().to_vec(),
            matrix,
        })
        .expect("matrix serialization cannot fail")
    }

    /// Parses the compact type names: `A3`, `B4`, `D5`, `E7`, `F4`, `H3`,
    /// `I2:7`, and `I2:inf` (or `I2:0`) for the infinite dihedral system.
    pub fn parse_name(name: &str) -> Result<CoxeterSystem> {
        let err = |reason: &str| Error::Parse {
            input: name.to_string(),
            reason: reason.to_string(),
        };
        if let Some(rest) = name.strip_prefix("I2:") {
            if rest == "inf" || rest == "0" {
                return CoxeterSystem::dihedral(Order::Infinite);
            }
            let m: u32 = rest
                .parse()
                .map_err(|_| err("expected I2:<order>, I2:inf, or I2:0"))?;
            return CoxeterSystem::dihedral(Order::Finite(m));
        }
        let (family, rank) = name.split_at(1);
        let rank: usize = rank.parse().map_err(|_| err("expected <letter><rank>"))?;
        match family {
            "A" => CoxeterSystem::type_a(rank),
            "B" => CoxeterSystem::type_b(rank),
            "D" => CoxeterSystem::type_d(rank),
            "E" => CoxeterSystem::type_e(rank),
            "F" if rank == 4 => CoxeterSystem::type_f4(),
            "H" => CoxeterSystem::type_h(rank),
            _ => Err(err("unknown family (expected A, B, D, E, F4, H, or I2:m)")),
        }
    }

    fn from_graph(n: usize, edges: &[(usize, usize, Order)]) -> Result<CoxeterSystem> {
        let mut orders = vec![vec![Order::Finite(2); n]; n];
        for (i, row) in orders.iter_mut().enumerate() {
            row[i] = Order::Finite(1);
        }
        for &(i, j, m) in edges {
            orders[i][j] = m;
            orders[j][i] = m;
        }
        CoxeterSystem::build(&orders, None)
    }

    fn chain_edges(n: usize) -> Vec<(usize, usize, Order)> {
        (0..n.saturating_sub(1))
            .map(|i| (i, i + 1, Order::Finite(3)))
            .collect()
    }

    /// The symmetric group S_{n+1}: a chain of n generators with bonds 3.
    pub fn type_a(n: usize) -> Result<CoxeterSystem> {
        if n < 1 {
            return Err(Error::InvalidMatrix("type A needs rank >= 1".into()));
        }
        CoxeterSystem::from_graph(n, &Self::chain_edges(n))
    }

    /// Hyperoctahedral: a chain with one bond of order 4 at the start.
    pub fn type_b(n: usize) -> Result<CoxeterSystem> {
        if n < 2 {
            return Err(Error::InvalidMatrix("type B needs rank >= 2".into()));
        }
        let mut edges = Self::chain_edges(n);
        edges[0].2 = Order::Finite(4);
        CoxeterSystem::from_graph(n, &edges)
    }

    /// Chain forked at the start: generators 0 and 1 both bond to 2.
    pub fn type_d(n: usize) -> Result<CoxeterSystem> {
        if n < 2 {
            return Err(Error::InvalidMatrix("type D needs rank >= 2".into()));
        }
        let mut edges = Vec::new();
        if n >= 3 {
            edges.push((0, 2, Order::Finite(3)));
            edges.push((1, 2, Order::Finite(3)));
            for i in 2..n - 1 {
                edges.push((i, i + 1, Order::Finite(3)));
            }
        }
        CoxeterSystem::from_graph(n, &edges)
    }

    /// The exceptional E systems, ranks 6 through 8: a chain
    /// 0-2-3-4-... with the extra node 1 bonded to 3.
    pub fn type_e(n: usize) -> Result<CoxeterSystem> {
        if !(6..=8).contains(&n) {
            return Err(Error::InvalidMatrix("type E needs rank 6, 7, or 8".into()));
        }
        let mut edges = vec![
            (0, 2, Order::Finite(3)),
            (1, 3, Order::Finite(3)),
            (2, 3, Order::Finite(3)),
        ];
        for i in 3..n - 1 {
            edges.push((i, i + 1, Order::Finite(3)));
        }
        CoxeterSystem::from_graph(n, &edges)
    }

    /// F4: a chain of four with the middle bond of order 4.
    pub fn type_f4() -> Result<CoxeterSystem> {
        let mut edges = Self::chain_edges(4);
        edges[1].2 = Order::Finite(4);
        CoxeterSystem::from_graph(4, &edges)
    }

    /// H3 and H4: a chain with the leading bond of order 5.
    pub fn type_h(n: usize) -> Result<CoxeterSystem> {
        if !(3..=4).contains(&n) {
            return Err(Error::InvalidMatrix("type H needs rank 3 or 4".into()));
        }
        let mut edges = Self::chain_edges(n);
        edges[0].2 = Order::Finite(5);
        CoxeterSystem::from_graph(n, &edges)
    }

    /// The dihedral system I2(m), infinite when `m` is.
    pub fn dihedral(m: Order) -> Result<CoxeterSystem> {
        if let Order::Finite(v) = m {
            if v < 2 {
                return Err(Error::InvalidMatrix("dihedral order must be at least 2".into()));
            }
        }
        CoxeterSystem::from_graph(2, &[(0, 1, m)])
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn order(&self, i: usize, j: usize) -> Order {
        self.inner.orders[i * self.inner.n + j]
    }

    /// The bilinear form entry B[i][j] = -cos(pi/m[i][j]).
    pub fn bilinear(&self, i: usize, j: usize) -> &Scalar {
        &self.inner.form[i * self.inner.n + j]
    }

    pub(crate) fn two_bilinear(&self, i: usize, j: usize) -> &Scalar {
        &self.inner.two_form[i * self.inner.n + j]
    }

    pub fn ctx(&self) -> &ScalarContext {
        &self.inner.ctx
    }

    /// The commutation alphabet of the generators: names, with `m = 2`
    /// pairs commuting. Reduced words are words over this alphabet.
    pub fn alphabet(&self) -> &Alphabet {
        &self.inner.alphabet
    }

    pub fn generator_name(&self, s: usize) -> &str {
        self.inner.alphabet.name(s)
    }

    pub(crate) fn same_instance(&self, other: &CoxeterSystem) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Is this exactly the type-A chain (bond 3 between neighbours, 2
    /// otherwise)? The one-line permutation view is only available then.
    pub fn is_type_a(&self) -> bool {
        let n = self.inner.n;
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let expected = if j == i + 1 { Order::Finite(3) } else { Order::Finite(2) };
                self.order(i, j) == expected
            })
        })
    }

    /// The basis root of generator `s`.
    pub fn simple_root(&self, s: usize) -> RootVec {
        assert!(s < self.inner.n, "generator index out of range");
        let coords = (0..self.inner.n)
            .map(|i| if i == s { self.inner.ctx.one() } else { self.inner.ctx.zero() })
            .collect();
        RootVec { coords }
    }

    /// Applies the generator `s` to a coordinate vector:
    /// `s(v) = v - 2 B(r_s, v) r_s`, which only changes coordinate `s`.
    pub fn reflect(&self, s: usize, v: &RootVec) -> RootVec {
        assert!(s < self.inner.n, "generator index out of range");
        assert_eq!(v.coords.len(), self.inner.n, "root has wrong dimension");
        let mut inner = self.inner.ctx.zero();
        for (j, c) in v.coords.iter().enumerate() {
            if !c.is_zero() {
                inner = &inner + &(self.two_bilinear(s, j) * c);
            }
        }
        let mut coords = v.coords.clone();
        coords[s] = &coords[s] - &inner;
        RootVec { coords }
    }

    /// Evaluates the bilinear form on two coordinate vectors.
    pub fn form(&self, u: &RootVec, v: &RootVec) -> Scalar {
        let n = self.inner.n;
        assert_eq!(u.coords.len(), n);
        assert_eq!(v.coords.len(), n);
        let mut acc = self.inner.ctx.zero();
        for i in 0..n {
            if u.coords[i].is_zero() {
                continue;
            }
            let mut row = self.inner.ctx.zero();
            for j in 0..n {
                if !v.coords[j].is_zero() {
                    row = &row + &(self.bilinear(i, j) * &v.coords[j]);
                }
            }
            acc = &acc + &(&u.coords[i] * &row);
        }
        acc
    }
}

/// Whether a root is a nonnegative or nonpositive combination of simple
/// roots. Actual roots are always one or the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSign {
    Positive,
    Negative,
}

/// Coordinates of a vector in the root space, over the simple-root basis.
/// Equality, ordering, and hashing are componentwise on the canonical
/// scalar representations, so roots can key maps and sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVec {
    pub(crate) coords: Vec<Scalar>,
}

impl RootVec {
    pub fn new(coords: Vec<Scalar>) -> RootVec {
        RootVec { coords }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Classifies coordinate signs. Mixed signs (or all zero) mean the
    /// vector is not a root at all, which inside this crate indicates an
    /// arithmetic bug.
    pub fn sign_class(&self) -> Result<RootSign> {
        let mut pos = false;
        let mut neg = false;
        for c in &self.coords {
            match c.sign() {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
        }
        match (pos, neg) {
            (true, false) => Ok(RootSign::Positive),
            (false, true) => Ok(RootSign::Negative),
            (false, false) => Err(Error::ZeroVector),
            (true, true) => Err(Error::MixedSigns),
        }
    }

    /// If this is a simple root, its generator index.
    pub fn as_simple(&self) -> Option<usize> {
        let mut found = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || !c.is_one() {
                return None;
            }
            found = Some(i);
        }
        found
    }

    /// JSON form: the coordinate list, each coordinate a scalar object.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coords.iter().map(Scalar::to_json_value).collect())
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
