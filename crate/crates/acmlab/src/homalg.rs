//! Graded free modules, homogeneous maps between them, and presented modules.
//!
//! Convention: a free module stores generator degrees, so `gen_degrees = [g]`
//! is `S(-g)` and the classical twist `O(a)` corresponds to generator degree
//! `-a`. A map entry `(i, j)` is zero or homogeneous of degree
//! `source.gen_degrees[j] - target.gen_degrees[i]`.

use crate::error::Error;
use crate::field::FieldSpec;
use crate::matrix::PolyMatrix;
use crate::modgb::{syzygies_of, VecPoly};
use crate::poly::{HomDegree, Polynomial};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedFreeModule {
    pub gen_degrees: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(gen_degrees: Vec<i64>) -> GradedFreeModule {
        GradedFreeModule { gen_degrees }
    }

    pub fn rank(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gen_degrees.is_empty()
    }

    /// `twist(F, k)_t = F_{t+k}`: generator degrees drop by `k`.
    pub fn twist(&self, k: i64) -> GradedFreeModule {
        GradedFreeModule {
            gen_degrees: self.gen_degrees.iter().map(|g| g - k).collect(),
        }
    }

    /// `Hom(F, S(-c))`: generator degrees `c - g_i`, same index order.
    pub fn dual_into(&self, c: i64) -> GradedFreeModule {
        GradedFreeModule {
            gen_degrees: self.gen_degrees.iter().map(|g| c - g).collect(),
        }
    }

    /// Dimension of the degree-`t` piece of the free module.
    pub fn piece_dim(&self, t: i64, nvars: usize) -> i64 {
        self.gen_degrees
            .iter()
            .map(|g| monomial_count(nvars, t - g))
            .sum()
    }
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn monomial_count(nvars: usize, d: i64) -> i64 {
    if d < 0 {
        return 0;
    }
    // C(d + nvars - 1, nvars - 1)
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 1..nvars as i128 {
        num *= d as i128 + i;
        den *= i;
    }
    (num / den) as i64
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMap {
    pub matrix: PolyMatrix,
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
}

impl GradedMap {
    pub fn new(
        matrix: PolyMatrix,
        source: GradedFreeModule,
        target: GradedFreeModule,
    ) -> Result<GradedMap, Error> {
        if matrix.nrows != target.rank() || matrix.ncols != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x{} between free modules of ranks {} -> {}",
                matrix.nrows,
                matrix.ncols,
                source.rank(),
                target.rank()
            )));
        }
        for i in 0..matrix.nrows {
            for j in 0..matrix.ncols {
                let want = source.gen_degrees[j] - target.gen_degrees[i];
                match matrix.at(i, j).homogeneous_degree() {
                    HomDegree::Any => {}
                    HomDegree::Degree(d) if d == want => {}
                    other => {
                        return Err(Error::NotHomogeneous(format!(
                            "entry ({i},{j}) has degree {other:?}, expected {want}"
                        )))
                    }
                }
            }
        }
        Ok(GradedMap {
            matrix,
            source,
            target,
        })
    }

    pub fn nvars(&self) -> usize {
        self.matrix.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field
    }

    pub fn zero_map(target: GradedFreeModule, nvars: usize, field: FieldSpec) -> GradedMap {
        GradedMap {
            matrix: PolyMatrix::zero(target.rank(), 0, nvars, field),
            source: GradedFreeModule::new(Vec::new()),
            target,
        }
    }

    pub fn twist(&self, k: i64) -> GradedMap {
        GradedMap {
            matrix: self.matrix.clone(),
            source: self.source.twist(k),
            target: self.target.twist(k),
        }
    }

    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap, Error> {
        if self.source != inner.target {
            return Err(Error::DimensionMismatch(
                "composition twist mismatch".into(),
            ));
        }
        GradedMap::new(
            self.matrix.mul(&inner.matrix)?,
            inner.source.clone(),
            self.target.clone(),
        )
    }

    /// Transpose into `S(-c)`: the graded dual map.
    pub fn dual_into(&self, c: i64) -> GradedMap {
        GradedMap {
            matrix: self.matrix.transpose(),
            source: self.target.dual_into(c),
            target: self.source.dual_into(c),
        }
    }

    pub fn columns(&self) -> Vec<VecPoly> {
        if self.matrix.nrows == 0 {
            return vec![
                VecPoly::zero(0, self.matrix.nvars, self.matrix.field);
                self.matrix.ncols
            ];
        }
        (0..self.matrix.ncols)
            .map(|j| VecPoly::from_components(&self.matrix.column(j)))
            .collect()
    }

    pub fn from_columns(
        cols: &[VecPoly],
        col_degrees: Vec<i64>,
        target: GradedFreeModule,
        nvars: usize,
        field: FieldSpec,
    ) -> GradedMap {
        let mut matrix = PolyMatrix::zero(target.rank(), cols.len(), nvars, field);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..target.rank() {
                *matrix.at_mut(i, j) = c.component(i);
            }
        }
        GradedMap {
            matrix,
            source: GradedFreeModule::new(col_degrees),
            target,
        }
    }

    /// The induced map on second exterior powers: the `C(r,2) x C(r,2)`
    /// compound matrix of signed 2x2 minors. Basis of pairs `(i<j)` in
    /// lexicographic order.
    pub fn exterior_square(&self) -> Result<GradedMap, Error> {
        let m = &self.matrix;
        if m.nrows != m.ncols {
            return Err(Error::NotSquare {
                rows: m.nrows,
                cols: m.ncols,
            });
        }
        let src_pairs = index_pairs(self.source.rank());
        let tgt_pairs = index_pairs(self.target.rank());
        let mut out = PolyMatrix::zero(tgt_pairs.len(), src_pairs.len(), m.nvars, m.field);
        for (pi, &(i, j)) in tgt_pairs.iter().enumerate() {
            for (qi, &(k, l)) in src_pairs.iter().enumerate() {
                let minor = m.at(i, k).mul(m.at(j, l)).sub(&m.at(i, l).mul(m.at(j, k)));
                *out.at_mut(pi, qi) = minor;
            }
        }
        let src = GradedFreeModule::new(
            src_pairs
                .iter()
                .map(|&(k, l)| self.source.gen_degrees[k] + self.source.gen_degrees[l])
                .collect(),
        );
        let tgt = GradedFreeModule::new(
            tgt_pairs
                .iter()
                .map(|&(i, j)| self.target.gen_degrees[i] + self.target.gen_degrees[j])
                .collect(),
        );
        GradedMap::new(out, src, tgt)
    }
}

pub fn index_pairs(r: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(r * (r.saturating_sub(1)) / 2);
    for i in 0..r {
        for j in i + 1..r {
            out.push((i, j));
        }
    }
    out
}

/// Columns generating the kernel of a graded map, as a map into its source.
pub fn syzygy_generators(map: &GradedMap) -> GradedMap {
    let nvars = map.nvars();
    let field = map.field();
    if map.source.is_zero() {
        return GradedMap::zero_map(map.source.clone(), nvars, field);
    }
    if map.target.is_zero() {
        // everything maps to zero: the kernel is the whole source
        return GradedMap::new(
            PolyMatrix::identity(map.source.rank(), nvars, field),
            map.source.clone(),
            map.source.clone(),
        )
        .unwrap();
    }
    let cols = map.columns();
    let col_degs: Vec<i64> = (0..cols.len())
        .map(|j| map.source.gen_degrees[j])
        .collect();
    let raw = syzygies_of(&cols, &map.target.gen_degrees);
    let mut kept = Vec::new();
    let mut degs = Vec::new();
    for s in raw {
        if s.is_zero() {
            continue;
        }
        let d = s
            .homogeneous_degree(&col_degs)
            .expect("nonzero syzygy has a degree");
        kept.push(s);
        degs.push(d);
    }
    GradedMap::from_columns(&kept, degs, map.source.clone(), nvars, field)
}

/// A graded module presented as the cokernel of a homogeneous map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PresentedModule {
    pub pres: GradedMap,
}

impl PresentedModule {
    pub fn from_presentation(pres: GradedMap) -> PresentedModule {
        PresentedModule { pres }
    }

    pub fn free(module: GradedFreeModule, nvars: usize, field: FieldSpec) -> PresentedModule {
        PresentedModule {
            pres: GradedMap::zero_map(module, nvars, field),
        }
    }

    /// The residue field `S/(x_0..x_{n-1})` as a module.
    pub fn residue_field(nvars: usize, field: FieldSpec) -> PresentedModule {
        let target = GradedFreeModule::new(vec![0]);
        let mut m = PolyMatrix::zero(1, nvars, nvars, field);
        for i in 0..nvars {
            *m.at_mut(0, i) = Polynomial::variable(nvars, field, i);
        }
        PresentedModule {
            pres: GradedMap::new(m, GradedFreeModule::new(vec![1; nvars]), target).unwrap(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.pres.nvars()
    }

    pub fn field(&self) -> FieldSpec {
        self.pres.field()
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.pres.target.gen_degrees
    }

    pub fn num_relations(&self) -> usize {
        self.pres.source.rank()
    }

    pub fn twist(&self, k: i64) -> PresentedModule {
        PresentedModule {
            pres: self.pres.twist(k),
        }
    }

    /// Presentation of `M/FM`: appends `F * identity` relation columns.
    pub fn quotient_by_hypersurface(&self, f: &Polynomial) -> PresentedModule {
        let d = match f.homogeneous_degree() {
            HomDegree::Degree(d) => d,
            _ => panic!("hypersurface equation must be homogeneous and nonzero"),
        };
        let rank = self.pres.target.rank();
        let old = &self.pres.matrix;
        let mut m = PolyMatrix::zero(rank, old.ncols + rank, self.nvars(), self.field());
        for i in 0..rank {
            for j in 0..old.ncols {
                *m.at_mut(i, j) = old.at(i, j).clone();
            }
            *m.at_mut(i, old.ncols + i) = f.clone();
        }
        let mut src = self.pres.source.gen_degrees.clone();
        src.extend(self.pres.target.gen_degrees.iter().map(|g| g + d));
        PresentedModule {
            pres: GradedMap::new(m, GradedFreeModule::new(src), self.pres.target.clone())
                .expect("homogeneous by construction"),
        }
    }

    /// Tensor product presentation: generator grid with relations from both
    /// factors. Not pruned to minimal form.
    pub fn tensor(&self, other: &PresentedModule) -> PresentedModule {
        let nvars = self.nvars();
        let field = self.field();
        let ga = self.gen_degrees();
        let gb = other.gen_degrees();
        let (ra, rb) = (ga.len(), gb.len());
        let pa = &self.pres.matrix;
        let pb = &other.pres.matrix;
        let gens: Vec<i64> = ga
            .iter()
            .flat_map(|a| gb.iter().map(move |b| a + b))
            .collect();
        let ncols = pa.ncols * rb + ra * pb.ncols;
        let mut m = PolyMatrix::zero(ra * rb, ncols, nvars, field);
        let mut src = Vec::with_capacity(ncols);
        let mut col = 0;
        for j in 0..pa.ncols {
            for b in 0..rb {
                for i in 0..ra {
                    *m.at_mut(i * rb + b, col) = pa.at(i, j).clone();
                }
                src.push(self.pres.source.gen_degrees[j] + gb[b]);
                col += 1;
            }
        }
        for a in 0..ra {
            for j in 0..pb.ncols {
                for b in 0..rb {
                    *m.at_mut(a * rb + b, col) = pb.at(b, j).clone();
                }
                src.push(ga[a] + other.pres.source.gen_degrees[j]);
                col += 1;
            }
        }
        PresentedModule {
            pres: GradedMap::new(
                m,
                GradedFreeModule::new(src),
                GradedFreeModule::new(gens),
            )
            .expect("homogeneous by construction"),
        }
    }

    /// Presentation of the submodule of `self` generated by the images of the
    /// columns of `gens` (a map from a free module into the free cover).
    /// Relations are the syzygies of the generators modulo the presentation.
    pub fn submodule_from_cover(&self, gens: &GradedMap) -> PresentedModule {
        assert_eq!(gens.target, self.pres.target, "cover mismatch");
        let nvars = self.nvars();
        let field = self.field();
        let mut all = gens.columns();
        let na = all.len();
        all.extend(self.pres.columns());
        let mut all_degs: Vec<i64> = gens.source.gen_degrees.clone();
        all_degs.extend(self.pres.source.gen_degrees.iter().copied());
        let syz = syzygies_of(&all, &self.pres.target.gen_degrees);
        // project syzygies onto the generator block
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for s in syz {
            let proj = VecPoly::from_terms(
                na,
                nvars,
                field,
                s.terms
                    .iter()
                    .filter(|t| t.comp < na)
                    .cloned()
                    .collect(),
            );
            if proj.is_zero() {
                continue;
            }
            let d = proj
                .homogeneous_degree(&all_degs[..na])
                .expect("homogeneous projection");
            cols.push(proj);
            degs.push(d);
        }
        PresentedModule {
            pres: GradedMap::from_columns(
                &cols,
                degs,
                GradedFreeModule::new(gens.source.gen_degrees.clone()),
                nvars,
                field,
            ),
        }
    }
}
