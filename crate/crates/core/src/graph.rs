//! Circulant graphs over Z_n and their combinations.
//!
//! A circulant graph is determined by a symmetric connection set
//! `S ⊂ Z_n \ {0}`: vertices `a` and `b` are adjacent iff `(a - b) mod n ∈ S`.
//! Everything here is immutable after construction and validated eagerly, so
//! downstream spectral code never has to re-check structural preconditions.

use crate::arith;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Symmetric set of nonzero residues mod `n`, stored sorted and deduplicated
/// so that equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConnectionSet {
    n: u64,
    elements: Vec<u64>,
}

impl ConnectionSet {
    /// Validates range, nonzero-ness and symmetry (`s ∈ S ⇒ n - s ∈ S`).
    pub fn new(n: u64, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder { n, min: 1 });
        }
        let mut elems: Vec<u64> = elements.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        for &s in &elems {
            if s == 0 || s >= n {
                return Err(Error::ElementOutOfRange { s, n });
            }
        }
        for &s in &elems {
            let partner = n - s;
            if elems.binary_search(&partner).is_err() {
                return Err(Error::AsymmetricSet { s, partner, n });
            }
        }
        Ok(ConnectionSet { n, elements: elems })
    }

    pub fn empty(n: u64) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: u64) -> bool {
        self.elements.binary_search(&s).is_ok()
    }
}

/// Set of proper divisors of `n`, the parameter of a gcd graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSet {
    n: u64,
    divisors: Vec<u64>,
}

impl DivisorSet {
    pub fn new(n: u64, divisors: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder { n, min: 1 });
        }
        let mut divs: Vec<u64> = divisors.into_iter().collect();
        divs.sort_unstable();
        divs.dedup();
        for &d in &divs {
            if d == 0 || d >= n || n % d != 0 {
                return Err(Error::InvalidDivisor { d, n });
            }
        }
        Ok(DivisorSet { n, divisors: divs })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn contains(&self, d: u64) -> bool {
        self.divisors.binary_search(&d).is_ok()
    }
}

/// Circulant graph `Cay(Z_n, S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirculantGraph {
    connection: ConnectionSet,
}

impl CirculantGraph {
    pub fn new(connection: ConnectionSet) -> Self {
        CirculantGraph { connection }
    }

    /// The cycle C_n, connection set {1, n-1}. Needs n >= 3.
    pub fn cycle(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidOrder { n, min: 3 });
        }
        Ok(CirculantGraph {
            connection: ConnectionSet::new(n, [1, n - 1])?,
        })
    }

    /// Graph with empty connection set (no edges).
    pub fn empty(n: u64) -> Result<Self> {
        Ok(CirculantGraph {
            connection: ConnectionSet::empty(n)?,
        })
    }

    /// The gcd graph G(n, D) whose connection set is the union of the full
    /// gcd classes named by `d ∈ D`.
    pub fn gcd_graph(d: &DivisorSet) -> Self {
        CirculantGraph {
            connection: gcd_set(d),
        }
    }

    pub fn order(&self) -> u64 {
        self.connection.modulus()
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    pub fn degree(&self) -> u64 {
        self.connection.len() as u64
    }

    pub fn adjacent(&self, a: u64, b: u64) -> bool {
        let n = self.order();
        self.connection.contains((a + n - b % n) % n)
    }

    /// Edge-disjoint union on a shared vertex set. Rejects differing moduli
    /// and overlapping connection sets rather than merging silently.
    pub fn union(&self, other: &CirculantGraph) -> Result<CirculantGraph> {
        let n = self.order();
        if n != other.order() {
            return Err(Error::IncompatibleOrder {
                left: n,
                right: other.order(),
            });
        }
        for &s in other.connection.elements() {
            if self.connection.contains(s) {
                return Err(Error::NonDisjoint { shared: s });
            }
        }
        let merged = self
            .connection
            .elements()
            .iter()
            .chain(other.connection.elements())
            .copied();
        Ok(CirculantGraph {
            connection: ConnectionSet::new(n, merged)?,
        })
    }

    /// Complement within the complete graph K_n; an involution.
    pub fn complement(&self) -> CirculantGraph {
        let n = self.order();
        let elems = (1..n).filter(|s| !self.connection.contains(*s));
        CirculantGraph {
            connection: ConnectionSet::new(n, elems).expect("complement of symmetric set"),
        }
    }
}

/// Connection set {x : gcd(x, n) ∈ D}; symmetric by construction since
/// gcd(n - x, n) = gcd(x, n).
pub fn gcd_set(d: &DivisorSet) -> ConnectionSet {
    let n = d.modulus();
    let elems = (1..n).filter(|&x| d.contains(num_integer::gcd(x, n)));
    ConnectionSet::new(n, elems).expect("gcd classes are symmetric")
}

/// True iff `S` is a union of full gcd classes, i.e. `S = gcd_set(D)` for
/// some divisor set `D`. Equivalently: for every divisor `d`, `S` contains
/// either all or none of `{x : gcd(x, n) = d}`.
pub fn is_gcd_set(s: &ConnectionSet) -> bool {
    let n = s.modulus();
    for d in arith::divisors(n) {
        if d == n {
            continue;
        }
        let mut seen_in = false;
        let mut seen_out = false;
        for x in 1..n {
            if num_integer::gcd(x, n) == d {
                if s.contains(x) {
                    seen_in = true;
                } else {
                    seen_out = true;
                }
            }
        }
        if seen_in && seen_out {
            return false;
        }
    }
    true
}

/// The antipodal partner pair (u, u + n/2 mod n); odd orders have none.
pub fn antipodal_pair(n: u64, u: u64) -> Result<(u64, u64)> {
    if n % 2 != 0 {
        return Err(Error::NoAntipode { n });
    }
    if u >= n {
        return Err(Error::VertexOutOfRange { v: u, n });
    }
    Ok((u, (u + n / 2) % n))
}

/// One factor of a Cartesian product; `complemented` records whether the
/// factor was written as a complement (the stored graph is always the graph
/// actually walked on).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeFactor {
    pub graph: CirculantGraph,
    pub complemented: bool,
}

impl CompositeFactor {
    pub fn plain(graph: CirculantGraph) -> Self {
        CompositeFactor {
            graph,
            complemented: false,
        }
    }
}

/// Cartesian product of circulant factors, kept as a flat ordered factor
/// list (the product transition matrix is associative, so nesting carries no
/// information).
///
/// Vertices are mixed-radix indices with the first factor most significant:
/// `v = (..((v_1 * n_2) + v_2) * n_3 ..) + v_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeGraph {
    factors: Vec<CompositeFactor>,
}

impl CompositeGraph {
    pub fn new(factors: Vec<CompositeFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument(
                "a product needs at least one factor".into(),
            ));
        }
        let mut count: u64 = 1;
        for f in &factors {
            count = count.checked_mul(f.graph.order()).ok_or_else(|| {
                Error::InvalidArgument("product vertex count overflows u64".into())
            })?;
        }
        Ok(CompositeGraph { factors })
    }

    pub fn factors(&self) -> &[CompositeFactor] {
        &self.factors
    }

    pub fn vertex_count(&self) -> u64 {
        self.factors.iter().map(|f| f.graph.order()).product()
    }

    /// Split a flat vertex index into per-factor coordinates.
    pub fn coordinates(&self, v: u64) -> Result<Vec<u64>> {
        let total = self.vertex_count();
        if v >= total {
            return Err(Error::VertexOutOfRange { v, n: total });
        }
        let mut rest = v;
        let mut coords = vec![0u64; self.factors.len()];
        for (i, f) in self.factors.iter().enumerate().rev() {
            let n = f.graph.order();
            coords[i] = rest % n;
            rest /= n;
        }
        Ok(coords)
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn flat_index(&self, coords: &[u64]) -> Result<u64> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                coords.len()
            )));
        }
        let mut v = 0u64;
        for (c, f) in coords.iter().zip(&self.factors) {
            let n = f.graph.order();
            if *c >= n {
                return Err(Error::VertexOutOfRange { v: *c, n });
            }
            v = v * n + c;
        }
        Ok(v)
    }
}
