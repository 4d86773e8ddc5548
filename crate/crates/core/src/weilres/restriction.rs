use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::ptower::{Elem, ExtensionBasis, GaloisRing};
use crate::weilres::lie::{MatrixLieAlgebra, Scalars};

/// Extension data and the block matrices realizing the closed embedding
/// `GL_r(GR) -> GL_rn(Z/l^N)`.
///
/// Block `(j, i)` of `A` is `sigma_i(alpha_j) I_r` (rows follow the basis,
/// columns the embeddings) and block `(i, j)` of `B` is `sigma_i(beta_j) I_r`,
/// so `AB = BA = I` is exactly the trace-duality of the two bases.
#[derive(Clone, Debug)]
pub struct RestrictionData {
    gr: GaloisRing,
    ext: ExtensionBasis,
    r: usize,
    a: Matrix,
    b: Matrix,
}

impl RestrictionData {
    pub fn build(gr: &GaloisRing, basis: &[Elem], r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::DimensionMismatch("block size must be positive".into()));
        }
        let ext = gr.dual_basis(basis)?;
        let n = gr.degree();
        let ring = gr.ring().clone();
        let ir = Matrix::identity(ring.clone(), r);
        let mut a = Matrix::zeros(ring.clone(), r * n, r * n);
        let mut b = Matrix::zeros(ring.clone(), r * n, r * n);
        for j in 0..n {
            for i in 0..n {
                a.set_block(j * r, i * r, &ir.scale(&ext.conjugates[i][j]));
                b.set_block(i * r, j * r, &ir.scale(&ext.dual_conjugates[i][j]));
            }
        }
        let rd = Self {
            gr: gr.clone(),
            ext,
            r,
            a,
            b,
        };
        if !(&rd.a * &rd.b).is_identity() || !(&rd.b * &rd.a).is_identity() {
            return Err(Error::RamifiedOrDegenerate);
        }
        Ok(rd)
    }

    /// Restriction data for the power basis `1, x, ..., x^(n-1)`.
    pub fn with_power_basis(gr: &GaloisRing, r: usize) -> Result<Self> {
        Self::build(gr, &gr.power_basis(), r)
    }

    pub fn galois_ring(&self) -> &GaloisRing {
        &self.gr
    }

    pub fn extension_basis(&self) -> &ExtensionBasis {
        &self.ext
    }

    pub fn block_size(&self) -> usize {
        self.r
    }

    pub fn degree(&self) -> usize {
        self.gr.degree()
    }

    /// Size `rn` of the image matrices.
    pub fn image_size(&self) -> usize {
        self.r * self.gr.degree()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    fn check_source(&self, x: &Matrix) -> Result<()> {
        if x.ring() != self.gr.ring() {
            return Err(Error::NotOverExtension(self.gr.to_string()));
        }
        if x.rows() != self.r || x.cols() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "expected {0}x{0}, got {1}x{2}",
                self.r,
                x.rows(),
                x.cols()
            )));
        }
        Ok(())
    }

    /// `blockdiag(sigma_1(x), ..., sigma_n(x))`.
    pub fn conjugate_diagonal(&self, x: &Matrix) -> Matrix {
        let blocks: Vec<Matrix> = (0..self.degree()).map(|i| self.gr.frobenius_matrix(x, i)).collect();
        Matrix::block_diag(self.gr.ring().clone(), &blocks)
    }

    /// `A * blockdiag(sigma_i(x)) * B`, still over the Galois ring. Every
    /// entry is Frobenius-fixed.
    pub fn restrict_in_extension(&self, x: &Matrix) -> Result<Matrix> {
        self.check_source(x)?;
        Ok(&(&self.a * &self.conjugate_diagonal(x)) * &self.b)
    }

    /// The ring homomorphism `M_r(GR) -> M_rn(Z/l^N)` underlying the
    /// restriction; no invertibility requirement.
    pub fn restrict_endomorphism(&self, x: &Matrix) -> Result<Matrix> {
        let t = self.restrict_in_extension(x)?;
        let base = self.gr.base().clone();
        debug_assert!(t.entries().iter().all(|e| self.gr.ring().is_scalar(e)));
        Ok(t.map_into(base.clone(), |e| base.from_u64(e.coeffs()[0])))
    }

    /// `Phi(x)` for `x` in `GL_r(GR)`.
    pub fn restrict_matrix(&self, x: &Matrix) -> Result<Matrix> {
        self.check_source(x)?;
        let det = x.det()?;
        if !x.ring().is_unit(&det) {
            return Err(Error::NotInvertible {
                det: x.ring().format(&det),
            });
        }
        self.restrict_endomorphism(x)
    }

    /// Inverse of `Phi` on its image: `B t A` must be block diagonal with
    /// Frobenius-conjugate blocks, and the first block is returned.
    pub fn unrestrict_matrix(&self, t: &Matrix) -> Result<Matrix> {
        let (r, n) = (self.r, self.degree());
        if t.ring() != self.gr.base() {
            return Err(Error::RingMismatch(t.ring().to_string(), self.gr.base().to_string()));
        }
        if t.rows() != r * n || t.cols() != r * n {
            return Err(Error::DimensionMismatch(format!("expected {0}x{0}", r * n)));
        }
        let ring = self.gr.ring().clone();
        let lifted = t.map_into(ring.clone(), |e| ring.from_u64(e.coeffs()[0]));
        let d = &(&self.b * &lifted) * &self.a;
        let first = d.block(0, 0, r, r);
        for i in 0..n {
            for j in 0..n {
                let blk = d.block(i * r, j * r, r, r);
                if i == j {
                    if blk != self.gr.frobenius_matrix(&first, i) {
                        return Err(Error::NotInImage(format!("block {i} is not the conjugate of block 0")));
                    }
                } else if !blk.is_zero() {
                    return Err(Error::NotInImage(format!("off-diagonal block ({i},{j}) is nonzero")));
                }
            }
        }
        Ok(first)
    }

    /// Restriction of scalars of a matrix Lie algebra over the Galois ring:
    /// the base-scalar algebra spanned by `Phi(alpha_j b)` for the basis
    /// `alpha_j` and every basis element `b`.
    pub fn restrict_lie(&self, g: &MatrixLieAlgebra) -> Result<MatrixLieAlgebra> {
        if g.ring() != self.gr.ring() {
            return Err(Error::NotOverExtension(self.gr.to_string()));
        }
        if g.size() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "algebra acts on rank {}, block size is {}",
                g.size(),
                self.r
            )));
        }
        let mut basis = Vec::with_capacity(g.dim() * self.degree());
        for b in g.basis() {
            for alpha in &self.ext.basis {
                basis.push(self.restrict_endomorphism(&b.scale(alpha))?);
            }
        }
        MatrixLieAlgebra::new(self.gr.base().clone(), self.image_size(), basis, Scalars::Base)
    }
}
