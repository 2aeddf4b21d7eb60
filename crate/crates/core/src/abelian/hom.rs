use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::group::{integer_kernel, presentation, solve_integer, FgAbGroup, GroupElement};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A homomorphism between groups in invariant-factor form.
///
/// `matrix` has one row per target generator and one column per source
/// generator; rows belonging to torsion generators are kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: Matrix,
}

impl Homomorphism {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::IllDefinedMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.num_generators(),
                source.num_generators()
            )));
        }
        // A torsion generator of order d must land on an element killed by d.
        for (j, d) in source.torsion().iter().enumerate() {
            for i in 0..target.num_generators() {
                let v = &matrix[(i, j)] * d;
                let ok = match target.torsion().get(i) {
                    Some(t) => v.is_multiple_of(t),
                    None => v.is_zero(),
                };
                if !ok {
                    return Err(Error::IllDefinedMap(format!(
                        "generator {j} of order {d} is sent to an element of larger order"
                    )));
                }
            }
        }
        Ok(Self::new_unchecked(source, target, matrix))
    }

    pub(crate) fn new_unchecked(source: FgAbGroup, target: FgAbGroup, mut matrix: Matrix) -> Self {
        for (i, d) in target.torsion().iter().enumerate() {
            matrix.reduce_row(i, d);
        }
        Homomorphism {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        Self::new_unchecked(
            group.clone(),
            group.clone(),
            Matrix::identity(group.num_generators()),
        )
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            Matrix::zeros(target.num_generators(), source.num_generators()),
        )
    }

    /// Multiplication by `k` on a group.
    pub fn scalar(group: &FgAbGroup, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let n = group.num_generators();
        let diag = vec![k; n];
        Self::new_unchecked(group.clone(), group.clone(), Matrix::diagonal(&diag))
    }

    /// Sends generator `j` of the source to `images[j]`.
    pub fn from_images(
        source: &FgAbGroup,
        target: &FgAbGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::DimensionMismatch {
                expected: source.num_generators(),
                found: images.len(),
            });
        }
        let cols: Vec<Vec<BigInt>> = images.iter().map(|e| e.coords().to_vec()).collect();
        Self::new(
            source.clone(),
            target.clone(),
            Matrix::from_columns(target.num_generators(), &cols),
        )
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        assert_eq!(
            x.group(),
            &self.source,
            "element is not in the source group"
        );
        self.target
            .element_unchecked(self.matrix.mul_vec(x.coords()))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Homomorphism) -> Result<Homomorphism> {
        if first.target != self.source {
            return Err(Error::IncompatibleMaps(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        Ok(Self::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            &self.matrix * &first.matrix,
        ))
    }

    pub fn add(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::IncompatibleMaps(
                "sum of maps with different endpoints".into(),
            ));
        }
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] += &other.matrix[(i, j)];
            }
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            m,
        ))
    }

    pub fn sub(&self, other: &Homomorphism) -> Result<Homomorphism> {
        self.add(&Homomorphism::scalar(&other.target, -1).after(other)?)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<GroupElement> = (0..self.source.num_generators())
            .map(|j| self.target.element_unchecked(self.matrix.column(j)))
            .collect();
        Subgroup::generated_by(&self.target, &gens)
    }

    /// The kernel as a subgroup of the source.
    pub fn kernel(&self) -> Subgroup {
        // x is in the kernel iff M x lies in the target's relation lattice,
        // i.e. (x, w) solves [M | R] (x, w) = 0 for some w.
        let a = self.matrix.hconcat(&self.target.relation_columns());
        let ker = integer_kernel(&a);
        let n = self.source.num_generators();
        let gens: Vec<GroupElement> = (0..ker.cols())
            .map(|j| self.source.element_unchecked(ker.column(j)[..n].to_vec()))
            .collect();
        Subgroup::generated_by(&self.source, &gens)
    }

    pub fn cokernel(&self) -> Quotient {
        let cols: Vec<GroupElement> = (0..self.source.num_generators())
            .map(|j| self.target.element_unchecked(self.matrix.column(j)))
            .collect();
        quotient(&self.target, &cols)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Factors `self` through `sub`, which must contain the image.
    pub fn corestrict(&self, sub: &Subgroup) -> Result<Homomorphism> {
        if sub.ambient() != &self.target {
            return Err(Error::IncompatibleMaps(
                "subgroup of a different group".into(),
            ));
        }
        let images = (0..self.source.num_generators())
            .map(|j| sub.coordinates(&self.target.element_unchecked(self.matrix.column(j))))
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::from_images(&self.source, sub.group(), &images)
    }

    /// `self` restricted to a subgroup of the source.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Homomorphism> {
        self.after(sub.inclusion())
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} by {}", self.source, self.target, self.matrix)
    }
}

/// A subgroup of `ambient`, kept both as an abstract group in invariant-factor
/// form and as the images of that group's generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FgAbGroup,
    inclusion: Homomorphism,
}

impl Subgroup {
    pub fn generated_by(ambient: &FgAbGroup, elements: &[GroupElement]) -> Subgroup {
        let m = ambient.num_generators();
        let cols: Vec<Vec<BigInt>> = elements
            .iter()
            .map(|e| {
                assert_eq!(e.group(), ambient, "generator is not in the ambient group");
                e.coords().to_vec()
            })
            .collect();
        let s = Matrix::from_columns(m, &cols);
        // Relations among the generators: the kernel of Z^s -> G.
        let ker = integer_kernel(&s.hconcat(&ambient.relation_columns()));
        let relations = ker.submatrix(0, 0, cols.len(), ker.cols());
        let p = presentation(cols.len(), &relations);
        let inclusion = Homomorphism::new_unchecked(p.group, ambient.clone(), &s * &p.lift);
        Subgroup {
            ambient: ambient.clone(),
            inclusion,
        }
    }

    pub fn whole(group: &FgAbGroup) -> Subgroup {
        Subgroup {
            ambient: group.clone(),
            inclusion: Homomorphism::identity(group),
        }
    }

    pub fn trivial(group: &FgAbGroup) -> Subgroup {
        Subgroup {
            ambient: group.clone(),
            inclusion: Homomorphism::zero(&FgAbGroup::trivial(), group),
        }
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    /// The subgroup as an abstract group.
    pub fn group(&self) -> &FgAbGroup {
        self.inclusion.source()
    }

    pub fn inclusion(&self) -> &Homomorphism {
        &self.inclusion
    }

    /// Images in the ambient group of the abstract generators.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.group()
            .generators()
            .iter()
            .map(|g| self.inclusion.apply(g))
            .collect()
    }

    /// Coordinates of `x` with respect to the subgroup's generators.
    pub fn coordinates(&self, x: &GroupElement) -> Result<GroupElement> {
        let a = self
            .inclusion
            .matrix()
            .hconcat(&self.ambient.relation_columns());
        let z = solve_integer(&a, x.coords()).ok_or(Error::NotInSubgroup)?;
        let h = self.group().num_generators();
        Ok(self.group().element_unchecked(z[..h].to_vec()))
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.coordinates(x).is_ok()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && other.generators().iter().all(|g| self.contains(g))
    }

    /// Equality as subsets of the ambient group, by double inclusion.
    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.contains_subgroup(other) && other.contains_subgroup(self)
    }

    /// Index in the ambient group, `None` when infinite.
    pub fn index(&self) -> Option<BigInt> {
        quotient(&self.ambient, &self.generators()).group.order()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(ToString::to_string).collect();
        write!(f, "<{}> ≅ {}", gens.join(", "), self.group())
    }
}

/// A quotient group with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FgAbGroup,
    pub projection: Homomorphism,
}

/// `group / <elements>`.
pub fn quotient(group: &FgAbGroup, elements: &[GroupElement]) -> Quotient {
    let m = group.num_generators();
    let cols: Vec<Vec<BigInt>> = elements.iter().map(|e| e.coords().to_vec()).collect();
    let rel = Matrix::from_columns(m, &cols).hconcat(&group.relation_columns());
    let p = presentation(m, &rel);
    let projection = Homomorphism::new_unchecked(group.clone(), p.group.clone(), p.project);
    Quotient {
        group: p.group,
        projection,
    }
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    pub injections: Vec<Homomorphism>,
    pub projections: Vec<Homomorphism>,
}

pub fn direct_sum(summands: &[FgAbGroup]) -> DirectSum {
    let total: usize = summands.iter().map(FgAbGroup::num_generators).sum();
    let mut rel = Matrix::zeros(0, 0);
    for g in summands {
        rel = rel.block_diag(&g.relation_matrix());
    }
    let p = presentation(total, &rel);
    let mut injections = Vec::with_capacity(summands.len());
    let mut projections = Vec::with_capacity(summands.len());
    let mut offset = 0;
    for g in summands {
        let n = g.num_generators();
        let inj = p.project.submatrix(0, offset, p.group.num_generators(), n);
        let proj = p.lift.submatrix(offset, 0, n, p.group.num_generators());
        injections.push(Homomorphism::new_unchecked(g.clone(), p.group.clone(), inj));
        projections.push(Homomorphism::new_unchecked(
            p.group.clone(),
            g.clone(),
            proj,
        ));
        offset += n;
    }
    DirectSum {
        group: p.group,
        injections,
        projections,
    }
}
