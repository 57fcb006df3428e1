//! Parabolic subgroups P_j = Stab(<x_1..x_j>) of symplectic and orthogonal groups.
//!
//! Coordinates follow the natural forms in `groups`: the isotropic vectors x_i sit at
//! index i and their duals y_i at index h + i, h being the number of hyperbolic pairs.

use std::sync::Arc;

use crate::field::Field;
use crate::groups::{Family, GroupError, GroupTable};
use crate::matrix::Mat;

#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub group: Arc<GroupTable>,
    pub j: usize,
    /// Offset of the dual isotropic block.
    pub h: usize,
    /// Z(U_j) is parameterized by symmetric (Sp) or alternating (orthogonal) X.
    pub symmetric: bool,
    pub p: Vec<u32>,
    pub u: Vec<u32>,
    pub levi: Vec<u32>,
    /// Elements [I_j, X] of Z(U_j), paired with their parameter X (j x j).
    pub center: Vec<(u32, Mat)>,
}

fn hyperbolic_pairs(g: &GroupTable) -> Result<(usize, bool), GroupError> {
    let spec = g.spec().ok_or_else(|| GroupError::Unsupported("parabolic needs a classical spec".into()))?;
    match spec.family {
        Family::Sp => Ok((spec.dim / 2, true)),
        Family::GO | Family::SO | Family::Omega => Ok((spec.witt_index(), false)),
        _ => Err(GroupError::Unsupported(format!("no parabolic data for {spec}"))),
    }
}

/// The q^{j(j+1)/2} symmetric or q^{j(j-1)/2} alternating j x j matrices.
pub fn parameter_matrices(j: usize, symmetric: bool, k: &Field) -> Vec<Mat> {
    let slots: Vec<(usize, usize)> = (0..j)
        .flat_map(|a| ((if symmetric { a } else { a + 1 })..j).map(move |b| (a, b)))
        .collect();
    let q = k.q() as usize;
    let total = q.pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut x = Mat::zero(j, j);
            for &(a, b) in &slots {
                let v = (code % q) as u32;
                code /= q;
                x.set(a, b, v);
                x.set(b, a, if symmetric { v } else { k.neg(v) });
            }
            x
        })
        .collect()
}

/// The matrix [I_j, X]: identity plus X in the block (x-rows, y-columns).
pub fn center_element(dim: usize, h: usize, x: &Mat) -> Mat {
    let mut m = Mat::identity(dim);
    for a in 0..x.rows {
        for b in 0..x.cols {
            m.set(a, h + b, x.get(a, b));
        }
    }
    m
}

pub fn parabolic(g: &Arc<GroupTable>, j: usize) -> Result<ParabolicData, GroupError> {
    let (h, symmetric) = hyperbolic_pairs(g)?;
    if j == 0 || j > h {
        return Err(GroupError::WittIndex { j, witt: h });
    }
    let d = g.dim();
    let xs: Vec<usize> = (0..j).collect();
    let ys: Vec<usize> = (h..h + j).collect();
    let stabilizes = |m: &[u32], block: &[usize]| {
        block.iter().all(|&c| (0..d).all(|r| block.contains(&r) || m[r * d + c] == 0))
    };
    let p = g.filter_ids(|m| stabilizes(m, &xs));
    let levi: Vec<u32> = p.iter().copied().filter(|&id| stabilizes(g.matrix(id), &ys)).collect();
    // U_j: trivial on X, on X^perp/X and on V/X^perp.
    let u: Vec<u32> = p
        .iter()
        .copied()
        .filter(|&id| {
            let m = g.matrix(id);
            let e = |r: usize, c: usize| m[r * d + c] != (r == c) as u32;
            let cols_ok = (0..d).all(|c| {
                if xs.contains(&c) {
                    (0..d).all(|r| !e(r, c))
                } else if !ys.contains(&c) {
                    (0..d).all(|r| xs.contains(&r) || !e(r, c))
                } else {
                    true
                }
            });
            cols_ok && ys.iter().all(|&r| (0..d).all(|c| !e(r, c)))
        })
        .collect();
    let k = g.field();
    let mut center = Vec::new();
    for x in parameter_matrices(j, symmetric, k) {
        let m = center_element(d, h, &x);
        let id = g.id_of(&m.data).ok_or_else(|| {
            GroupError::Unsupported(format!("[I,X] not in {}; form not in standard coordinates", g.label()))
        })?;
        center.push((id, x));
    }
    Ok(ParabolicData { group: g.clone(), j, h, symmetric, p, u, levi, center })
}

impl ParabolicData {
    /// Elements of U_j commuting with all of U_j, by direct check.
    pub fn center_by_commutation(&self) -> Vec<u32> {
        let g = &self.group;
        let mut z: Vec<u32> = self
            .u
            .iter()
            .copied()
            .filter(|&a| self.u.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            .collect();
        z.sort_unstable();
        z
    }

    /// Exponent of lambda_Y at [I,X]: Tr_{F_q/F_p} tr(XY) as a residue mod p.
    pub fn lambda_exponent(&self, x: &Mat, y: &Mat) -> u32 {
        let k = self.group.field();
        let t = (0..self.j).fold(0, |acc, a| {
            (0..self.j).fold(acc, |acc, b| k.add(acc, k.mul(x.get(a, b), y.get(b, a))))
        });
        k.trace(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate, GroupSpec};

    #[test]
    fn siegel_shapes() {
        let g = enumerate(&"SO+(4,3)".parse::<GroupSpec>().unwrap()).unwrap();
        let p2 = parabolic(&g, 2).unwrap();
        assert_eq!(p2.center.len(), 3);
        assert_eq!(p2.p.len(), p2.u.len() * p2.levi.len());
        let mut z: Vec<u32> = p2.center.iter().map(|c| c.0).collect();
        z.sort_unstable();
        assert_eq!(z, p2.center_by_commutation());
        let p1 = parabolic(&g, 1).unwrap();
        assert_eq!(p1.center.len(), 1);
        assert!(parabolic(&g, 3).is_err());

        let s = enumerate(&GroupSpec::sp(4, 3)).unwrap();
        let q2 = parabolic(&s, 2).unwrap();
        assert_eq!(q2.u.len(), 27);
        assert_eq!(q2.levi.len(), 48);
        assert_eq!(q2.center.len(), 27);
    }
}
