//! Keel relations and normal forms in Pic(M̄₀,ₙ) ⊗ ℚ.
//!
//! For every four distinct marked points i, j, k, l there are three boundary
//! sums
//!
//! ```text
//! S_{ij|kl} = Σ B_I   over I ∋ i,j with I ∩ {k,l} = ∅,
//! ```
//!
//! and the Keel relations say all three are linearly equivalent.  The pairwise
//! differences generate every relation among boundary classes.  This module
//! enumerates those generators, row-reduces them with pivots taken in
//! canonical column order (block size ascending, then lexicographic), and uses
//! the reduced rows to rewrite arbitrary classes into a unique normal form
//! supported on the non-pivot columns.  ψ coordinates are untouched by the
//! relations and pass through reduction unchanged.
//!
//! [`relation_basis`] memoizes one [`RelationBasis`] per n for the life of the
//! process, and additionally round-trips it through a JSON file under
//! `$M0N_CACHE_DIR` when that variable is set.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::boundary::{all_boundary_classes, check_n, BoundaryIndex};
use crate::divisor::{json_rational, DivisorClass};
use crate::rational::{format_q, q, Q};
use crate::{Error, Result};

/// Largest n for which relation matrices are built; beyond this the column
/// count (2^{n−1} − n − 1) makes exact row reduction pointless in practice.
pub const MAX_RELATION_N: u8 = 12;

/// The canonical generating set of Keel relations on M̄₀,ₙ: all pairwise
/// differences of the three boundary sums of each quadruple, deduplicated up
/// to sign.  Every vector has coefficients ±1 and coefficient sum zero.
pub fn keel_relations(n: u8) -> Result<Vec<DivisorClass>> {
    check_relation_n(n)?;
    let mut seen: std::collections::HashSet<Vec<(BoundaryIndex, i8)>> = Default::default();
    let mut out = Vec::new();
    for quad in quadruples(n) {
        let [i, j, k, l] = quad;
        let sums = [
            boundary_sum(n, i, j, k, l)?,
            boundary_sum(n, i, k, j, l)?,
            boundary_sum(n, i, l, j, k)?,
        ];
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let mut coeffs: Vec<(BoundaryIndex, i8)> = sums[a]
                .iter()
                .map(|&idx| (idx, 1i8))
                .chain(sums[b].iter().map(|&idx| (idx, -1i8)))
                .collect();
            coeffs.sort_unstable_by_key(|(idx, _)| *idx);
            // Sign-normalize: the smallest index in the support gets +1.
            if coeffs.first().is_some_and(|(_, c)| *c < 0) {
                for (_, c) in &mut coeffs {
                    *c = -*c;
                }
            }
            if seen.insert(coeffs.clone()) {
                let class = DivisorClass::from_parts(
                    n,
                    coeffs.into_iter().map(|(idx, c)| (idx, q(i64::from(c)))),
                    [],
                )?;
                out.push(class);
            }
        }
    }
    Ok(out)
}

/// The classes of the boundary sum S_{ab|cd}; there are 2^{n−4} of them and
/// they are pairwise distinct as canonical indices.
fn boundary_sum(n: u8, a: u8, b: u8, c: u8, d: u8) -> Result<Vec<BoundaryIndex>> {
    let base = (1u32 << (a - 1)) | (1u32 << (b - 1));
    let avoid = (1u32 << (c - 1)) | (1u32 << (d - 1));
    let free: Vec<u8> = (1..=n).filter(|&e| ![a, b, c, d].contains(&e)).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for choice in 0u32..(1 << free.len()) {
        let mut mask = base;
        for (bit, &e) in free.iter().enumerate() {
            if choice & (1 << bit) != 0 {
                mask |= 1u32 << (e - 1);
            }
        }
        debug_assert_eq!(mask & avoid, 0);
        out.push(BoundaryIndex::from_mask(n, mask)?);
    }
    Ok(out)
}

fn quadruples(n: u8) -> impl Iterator<Item = [u8; 4]> {
    (1..=n).flat_map(move |i| {
        (i + 1..=n).flat_map(move |j| {
            (j + 1..=n).flat_map(move |k| (k + 1..=n).map(move |l| [i, j, k, l]))
        })
    })
}

/// A row-reduced basis of the Keel relations for one value of n, ready to
/// compute normal forms and quotient coordinates.
pub struct RelationBasis {
    n: u8,
    classes: Vec<BoundaryIndex>,
    column: HashMap<BoundaryIndex, usize>,
    relations: Vec<DivisorClass>,
    rref: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl RelationBasis {
    /// Generates the relations for n and row-reduces them.  Prefer
    /// [`relation_basis`], which memoizes the result.
    pub fn compute(n: u8) -> Result<Self> {
        let relations = keel_relations(n)?;
        let classes = all_boundary_classes(n)?;
        let column: HashMap<BoundaryIndex, usize> =
            classes.iter().enumerate().map(|(c, &idx)| (idx, c)).collect();
        let rows: Vec<Vec<Q>> = relations
            .iter()
            .map(|rel| {
                let mut row = vec![Q::zero(); classes.len()];
                for (idx, coeff) in rel.boundary_coeffs() {
                    row[column[idx]] = coeff.clone();
                }
                row
            })
            .collect();
        let (rref, pivots) = reduced_row_echelon(rows);
        Ok(Self {
            n,
            classes,
            column,
            relations,
            rref,
            pivots,
        })
    }

    /// The ambient number of marked points.
    pub fn n(&self) -> u8 {
        self.n
    }

    /// All canonical boundary classes, in the column order of the matrices.
    pub fn classes(&self) -> &[BoundaryIndex] {
        &self.classes
    }

    /// The deduplicated generating relations, in generation order.
    pub fn relations(&self) -> &[DivisorClass] {
        &self.relations
    }

    /// The rank of the relation span.
    pub fn rank(&self) -> usize {
        self.rref.len()
    }

    /// dim Pic(M̄₀,ₙ) ⊗ ℚ restricted to boundary classes: column count minus
    /// relation rank.
    pub fn quotient_dim(&self) -> usize {
        self.classes.len() - self.rank()
    }

    /// Column index of a canonical class.
    pub fn column_of(&self, index: &BoundaryIndex) -> Option<usize> {
        self.column.get(index).copied()
    }

    /// The non-pivot columns; their classes descend to a basis of the
    /// boundary quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivot_iter = self.pivots.iter().peekable();
        (0..self.classes.len())
            .filter(|c| {
                if pivot_iter.peek() == Some(&c) {
                    pivot_iter.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// The boundary coordinates of a class as a dense vector in column order.
    pub fn to_dense(&self, class: &DivisorClass) -> Result<Vec<Q>> {
        if class.n() != self.n {
            return Err(Error::MismatchedN(self.n, class.n()));
        }
        let mut dense = vec![Q::zero(); self.classes.len()];
        for (idx, coeff) in class.boundary_coeffs() {
            dense[self.column[idx]] = coeff.clone();
        }
        Ok(dense)
    }

    /// Eliminates every pivot column from a dense boundary vector.
    pub fn reduce_dense(&self, mut dense: Vec<Q>) -> Vec<Q> {
        for (row, &p) in self.rref.iter().zip(&self.pivots) {
            if dense[p].is_zero() {
                continue;
            }
            // The pivot entry of `row` is 1 and its other pivot entries are 0,
            // so one subtraction per row clears exactly this column.
            let factor = dense[p].clone();
            for (slot, coeff) in dense.iter_mut().zip(row) {
                if !coeff.is_zero() {
                    *slot -= coeff * &factor;
                }
            }
        }
        dense
    }

    /// The unique representative of the class modulo the Keel relations that
    /// is supported on non-pivot columns.  ψ coordinates pass through.
    pub fn normal_form(&self, class: &DivisorClass) -> Result<DivisorClass> {
        let dense = self.reduce_dense(self.to_dense(class)?);
        DivisorClass::from_parts(
            self.n,
            dense
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (self.classes[c], v)),
            class.psi_coeffs().iter().map(|(&i, v)| (i, v.clone())),
        )
    }

    /// Coordinates of the class in the quotient basis: the values at the free
    /// columns after reduction.  Rejects classes with ψ components.
    pub fn quotient_coords(&self, class: &DivisorClass) -> Result<Vec<Q>> {
        if !class.is_boundary_supported() {
            return Err(Error::InvalidArgument(
                "quotient coordinates are defined for boundary-supported classes".into(),
            ));
        }
        let dense = self.reduce_dense(self.to_dense(class)?);
        Ok(self.free_columns().into_iter().map(|c| dense[c].clone()).collect())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "format": 1,
            "n": self.n,
            "relations": self
                .relations
                .iter()
                .map(|rel| {
                    rel.boundary_coeffs()
                        .iter()
                        .map(|(idx, c)| (idx.to_string(), serde_json::Value::String(format_q(c))))
                        .collect::<serde_json::Map<_, _>>()
                })
                .collect::<Vec<_>>(),
            "rref": self
                .rref
                .iter()
                .map(|row| row.iter().map(format_q).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "pivots": self.pivots,
        })
    }

    fn from_json(n: u8, value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Json("cache root must be an object".into()))?;
        if obj.get("format").and_then(|v| v.as_u64()) != Some(1) {
            return Err(Error::Json("unknown cache format".into()));
        }
        if obj.get("n").and_then(|v| v.as_u64()) != Some(u64::from(n)) {
            return Err(Error::Json("cache is for a different n".into()));
        }
        let classes = all_boundary_classes(n)?;
        let column: HashMap<BoundaryIndex, usize> =
            classes.iter().enumerate().map(|(c, &idx)| (idx, c)).collect();
        let relations = obj
            .get("relations")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Json("missing \"relations\"".into()))?
            .iter()
            .map(|rel| {
                let map = rel
                    .as_object()
                    .ok_or_else(|| Error::Json("relation must be an object".into()))?;
                DivisorClass::from_parts(
                    n,
                    map.iter()
                        .map(|(key, val)| {
                            Ok((crate::parse::parse_boundary_symbol(n, key)?, json_rational(val)?))
                        })
                        .collect::<Result<Vec<_>>>()?,
                    [],
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let rref = obj
            .get("rref")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Json("missing \"rref\"".into()))?
            .iter()
            .map(|row| {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::Json("rref row must be an array".into()))?;
                if row.len() != classes.len() {
                    return Err(Error::Json("rref row has the wrong length".into()));
                }
                row.iter().map(json_rational).collect::<Result<Vec<Q>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let pivots = obj
            .get("pivots")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Json("missing \"pivots\"".into()))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|p| p as usize)
                    .ok_or_else(|| Error::Json("pivot must be an integer".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = Self {
            n,
            classes,
            column,
            relations,
            rref,
            pivots,
        };
        basis.validate()?;
        Ok(basis)
    }

    /// Structural validation of a deserialized basis: the generating set must
    /// match regeneration exactly, the echelon structure must be well formed,
    /// and every generator must reduce to zero.
    fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Json(format!("cache validation failed: {msg}")));
        let fresh = keel_relations(self.n)?;
        if fresh.len() != self.relations.len()
            || fresh.iter().zip(&self.relations).any(|(a, b)| a != b)
        {
            return fail("stored relations differ from regeneration");
        }
        if self.rref.len() != self.pivots.len() || self.rref.len() > self.relations.len() {
            return fail("echelon shape is inconsistent");
        }
        if self.pivots.windows(2).any(|w| w[0] >= w[1]) {
            return fail("pivot columns are not strictly increasing");
        }
        for (r, (row, &p)) in self.rref.iter().zip(&self.pivots).enumerate() {
            if p >= self.classes.len() || !row[p].is_one() {
                return fail("pivot entry is not 1");
            }
            if row[..p].iter().any(|v| !v.is_zero()) {
                return fail("nonzero entry left of a pivot");
            }
            for (r2, &p2) in self.pivots.iter().enumerate() {
                if r2 != r && !row[p2].is_zero() {
                    return fail("pivot column not cleared");
                }
            }
        }
        for rel in &self.relations {
            if !self.normal_form(rel)?.is_zero() {
                return fail("a generator does not reduce to zero");
            }
        }
        Ok(())
    }
}

/// Rank of a rational matrix given as rows, by exact elimination.
pub fn matrix_rank(rows: Vec<Vec<Q>>) -> usize {
    reduced_row_echelon(rows).1.len()
}

/// Gauss–Jordan elimination over ℚ with pivots chosen left to right; returns
/// the reduced rows and their pivot columns.
pub(crate) fn reduced_row_echelon(mut rows: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let lead = rows[rank][col].clone();
        if !lead.is_one() {
            for v in rows[rank].iter_mut() {
                if !v.is_zero() {
                    *v = &*v / &lead;
                }
            }
        }
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut row[col], Q::zero());
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col + 1) {
                if !pv.is_zero() {
                    *v -= pv * &factor;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    // Back-eliminate above each pivot to reach reduced form.
    for k in (0..rank).rev() {
        let col = pivots[k];
        let pivot_row = rows[k].clone();
        for row in rows.iter_mut().take(k) {
            if row[col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut row[col], Q::zero());
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col + 1) {
                if !pv.is_zero() {
                    *v -= pv * &factor;
                }
            }
        }
    }
    (rows, pivots)
}

fn check_relation_n(n: u8) -> Result<()> {
    check_n(n)?;
    if n > MAX_RELATION_N {
        return Err(Error::UnsupportedN(
            n,
            "relation matrices are limited to n <= 12",
        ));
    }
    Ok(())
}

/// The memoized relation basis for n.  One instance per n per process; when
/// `$M0N_CACHE_DIR` is set, the basis is also persisted there as
/// `relations-n{n}.json` and reloaded (after validation) on later runs.
pub fn relation_basis(n: u8) -> Result<Arc<RelationBasis>> {
    let dir = std::env::var_os("M0N_CACHE_DIR").map(PathBuf::from);
    relation_basis_with_cache(n, dir.as_deref())
}

/// [`relation_basis`] with an explicit on-disk cache location (`None` for
/// in-memory memoization only).
pub fn relation_basis_with_cache(n: u8, dir: Option<&Path>) -> Result<Arc<RelationBasis>> {
    static MEMO: OnceLock<Mutex<HashMap<u8, Arc<RelationBasis>>>> = OnceLock::new();
    check_relation_n(n)?;
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let hit = memo.lock().expect("relation memo poisoned").get(&n).cloned();
    if let Some(basis) = hit {
        // A memo hit still guarantees the on-disk copy when a directory is
        // supplied.
        if let Some(d) = dir {
            if !cache_path(n, d).exists() {
                let _ = store_cached(&basis, d);
            }
        }
        return Ok(basis);
    }
    let basis = match dir.map(|d| load_cached(n, d)) {
        Some(Ok(basis)) => Arc::new(basis),
        _ => {
            let basis = Arc::new(RelationBasis::compute(n)?);
            if let Some(d) = dir {
                // Best effort: an unwritable cache directory must not fail the
                // computation itself.
                let _ = store_cached(&basis, d);
            }
            basis
        }
    };
    memo.lock()
        .expect("relation memo poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&basis));
    Ok(basis)
}

fn cache_path(n: u8, dir: &Path) -> PathBuf {
    dir.join(format!("relations-n{n}.json"))
}

fn load_cached(n: u8, dir: &Path) -> Result<RelationBasis> {
    let text = std::fs::read_to_string(cache_path(n, dir))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
    RelationBasis::from_json(n, &value)
}

fn store_cached(basis: &RelationBasis, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let path = cache_path(basis.n, dir);
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_string(&basis.to_json()).expect("serializable"))?;
    std::fs::rename(&tmp, &path)?;
    Ok(())
}

/// The normal form of a class modulo the Keel relations, using the memoized
/// basis for its n.
pub fn normal_form(class: &DivisorClass) -> Result<DivisorClass> {
    relation_basis(class.n())?.normal_form(class)
}

/// Whether two classes are equal in Pic(M̄₀,ₙ) ⊗ ℚ: their ψ coordinates must
/// agree outright, and their difference must reduce to zero.
pub fn class_equal(a: &DivisorClass, b: &DivisorClass) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::MismatchedN(a.n(), b.n()));
    }
    let diff = a.checked_sub(b)?;
    if !diff.is_boundary_supported() {
        return Ok(false);
    }
    Ok(normal_form(&diff)?.is_zero())
}
