use super::{ModHom, Module};
use crate::error::Result;
use crate::gfla::{Echelon, FpMatrix, Subspace};

/// `Hom_kG(source, target)` with an RREF basis of the vectorised (row-major) matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    basis: Vec<FpMatrix>,
    space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[FpMatrix] {
        &self.basis
    }
    pub fn basis_homs(&self) -> Vec<ModHom> {
        self.basis.iter().map(|m| ModHom::new_unchecked(&self.source, &self.target, m.clone())).collect()
    }
    /// The basis as a subspace of `k^(dim_t * dim_s)`.
    pub fn as_subspace(&self) -> &Subspace {
        &self.space
    }
    pub fn contains(&self, m: &FpMatrix) -> bool {
        m.shape() == (self.target.dim(), self.source.dim()) && self.space.contains(m.data())
    }
    /// Coordinates in the basis; these are the entries at the pivot positions.
    pub fn coords(&self, m: &FpMatrix) -> Option<Vec<u32>> {
        self.space.coords(m.data())
    }
    /// Row-major `(row, col)` positions of the pivots.
    pub fn pivot_positions(&self) -> Vec<(usize, usize)> {
        let c = self.source.dim();
        self.space.pivots().iter().map(|&k| (k / c, k % c)).collect()
    }
    pub fn element(&self, coeffs: &[u32]) -> FpMatrix {
        let p = self.source.p();
        let mut m = FpMatrix::zeros(p, self.target.dim(), self.source.dim());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            m.axpy(*c, b);
        }
        m
    }
}

/// Basis of the intertwiners `source -> target`. The smaller side is spun; if that is the
/// target, the dual problem `Hom(target*, source*)` is solved and transposed.
pub fn hom_space(source: &Module, target: &Module) -> Result<HomSpace> {
    source.check_compatible(target)?;
    let p = source.p();
    let mats = if source.dim() == 0 || target.dim() == 0 {
        Vec::new()
    } else if source.dim() <= target.dim() {
        spin_hom(source, target)
    } else {
        spin_hom(&target.dual(), &source.dual()).into_iter().map(|m| m.transpose()).collect()
    };
    let n = source.dim() * target.dim();
    let space = Subspace::from_vectors(p, n, mats.into_iter().map(|m| m.into_data()).collect());
    let basis = space
        .basis()
        .iter()
        .map(|v| FpMatrix::from_vec(p, target.dim(), source.dim(), v.clone()))
        .collect();
    Ok(HomSpace { source: source.clone(), target: target.clone(), basis, space })
}

enum Origin {
    Seed(usize),
    Image(usize, usize),
}

/// Spins `a` from standard basis seeds. An intertwiner `F` is fixed by the images `y_s` of the
/// seeds; every recorded relation `A_g b_j = sum c_m b_m` yields `B_g F b_j = sum c_m F b_m`.
fn spin_hom(a: &Module, b: &Module) -> Vec<FpMatrix> {
    let p = a.p();
    let (da, db) = (a.dim(), b.dim());
    let ag = a.generator_matrices();
    let bg = b.generator_matrices();
    let mut ech = Echelon::with_tracking(p, da);
    let mut raw: Vec<Vec<u32>> = Vec::new();
    let mut origin: Vec<Origin> = Vec::new();
    let mut relations: Vec<(usize, usize, Vec<u32>)> = Vec::new();
    let mut seeds = 0;
    for s in 0..da {
        if ech.is_full() {
            break;
        }
        let mut e = vec![0u32; da];
        e[s] = 1;
        if ech.insert_tracked(e.clone()).is_some() {
            continue;
        }
        raw.push(e);
        origin.push(Origin::Seed(seeds));
        seeds += 1;
        let mut head = raw.len() - 1;
        while head < raw.len() {
            for (g, m) in ag.iter().enumerate() {
                let v = m.mul_vec(&raw[head]);
                match ech.insert_tracked(v.clone()) {
                    None => {
                        raw.push(v);
                        origin.push(Origin::Image(head, g));
                    }
                    Some(c) => relations.push((head, g, c)),
                }
            }
            head += 1;
        }
    }
    let nb = raw.len();
    debug_assert_eq!(nb, da);
    let unknowns = seeds * db;

    // images F b_j for a given assignment of the seed images
    let images = |y: &[u32]| -> Vec<Vec<u32>> {
        let mut f: Vec<Vec<u32>> = Vec::with_capacity(nb);
        for o in &origin {
            let v = match *o {
                Origin::Seed(s) => y[s * db..(s + 1) * db].to_vec(),
                Origin::Image(j, g) => bg[g].mul_vec(&f[j]),
            };
            f.push(v);
        }
        f
    };

    // equation matrix, one column per unknown
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let mut y = vec![0u32; unknowns];
        y[u] = 1;
        let f = images(&y);
        let fm = FpMatrix::from_columns(p, db, &f);
        let mut col = Vec::with_capacity(relations.len() * db);
        for (j, g, c) in &relations {
            let lhs = bg[*g].mul_vec(&f[*j]);
            let mut cc = c.clone();
            cc.resize(nb, 0);
            let rhs = fm.mul_vec(&cc);
            col.extend(lhs.iter().zip(&rhs).map(|(&x, &y)| crate::gfla::sub(x, y, p)));
        }
        cols.push(col);
    }
    let rows = relations.len() * db;
    let mut ech = Echelon::new(p, unknowns);
    for r in 0..rows {
        if ech.is_full() {
            break;
        }
        let row: Vec<u32> = cols.iter().map(|c| c[r]).collect();
        if row.iter().any(|&x| x != 0) {
            ech.insert(row);
        }
    }
    let kernel = ech.kernel();
    if kernel.is_empty() {
        return Vec::new();
    }
    let bmat = FpMatrix::from_columns(p, da, &raw);
    let binv = bmat.inverse().expect("spun basis is a basis");
    kernel
        .iter()
        .map(|y| {
            let f = images(y);
            FpMatrix::from_columns(p, db, &f).mul(&binv)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{Group, Perm};
    use crate::rep::is_intertwiner;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Kernel of the full linear system `F A_g - B_g F = 0` in the `dim_a * dim_b` entries.
    fn hom_dim_brute(a: &Module, b: &Module) -> usize {
        let (da, db) = (a.dim(), b.dim());
        let p = a.p();
        let n = da * db;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (ma, mb) in a.generator_matrices().iter().zip(b.generator_matrices()) {
            for r in 0..db {
                for c in 0..da {
                    let mut row = vec![0u32; n];
                    // (F A)[r][c] = sum_k F[r][k] A[k][c]
                    for k in 0..da {
                        row[r * da + k] = crate::gfla::add(row[r * da + k], ma.get(k, c), p);
                    }
                    // (B F)[r][c] = sum_k B[r][k] F[k][c]
                    for k in 0..db {
                        row[k * da + c] = crate::gfla::sub(row[k * da + c], mb.get(r, k), p);
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return n;
        }
        FpMatrix::from_row_vecs(p, n, &rows).kernel().dim()
    }

    #[test]
    fn spinning_matches_full_system() {
        let s3 = Group::from_generators(
            3,
            vec![Perm::parse_cycles(3, "(0 1)").unwrap(), Perm::parse_cycles(3, "(0 1 2)").unwrap()],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u32, 3] {
            let mods: Vec<Module> = (0..4).map(|_| Module::random(&s3, p, 4, &mut rng)).collect();
            for a in &mods {
                for b in &mods {
                    let h = hom_space(a, b).unwrap();
                    assert_eq!(h.dim(), hom_dim_brute(a, b));
                    for m in h.basis() {
                        assert!(is_intertwiner(a, b, m));
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_module_to_trivial() {
        let s3 = Group::from_generators(
            3,
            vec![Perm::parse_cycles(3, "(0 1)").unwrap(), Perm::parse_cycles(3, "(0 1 2)").unwrap()],
        )
        .unwrap();
        let h = s3.subgroup(&[s3.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap()]);
        let pm = Module::permutation(&h, 2);
        let t = Module::trivial(&s3, 2);
        assert_eq!(hom_space(&pm, &t).unwrap().dim(), 1);
        assert_eq!(hom_space(&t, &t).unwrap().dim(), 1);
    }
}
