use std::sync::Arc;

use super::model::{slot_params, GroupSpec, LieGroupModel};
use super::Group;
use crate::coeff::q;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{RationalFunction as RF, Q};

fn structure(d: usize, entries: &[(usize, usize, usize, i64)]) -> Vec<Vec<Vec<Q>>> {
    let mut f = vec![vec![vec![q(0, 1); d]; d]; d];
    for &(a, b, c, v) in entries {
        f[a][b][c] = q(v, 1);
        f[b][a][c] = q(-v, 1);
    }
    f
}

/// Upper unitriangular 3×3 matrices `I + aE12 + bE23 + cE13`.
pub fn heisenberg3() -> Group {
    let t = slot_params(3, 0);
    let s = slot_params(3, 3);
    let (a, b, c) = (&t[0], &t[1], &t[2]);
    let one = RF::one();
    let h = Matrix::from_rows(vec![
        vec![one.clone(), a.clone(), c.clone()],
        vec![RF::zero(), one.clone(), b.clone()],
        vec![RF::zero(), RF::zero(), one],
    ]);
    let spec = GroupSpec {
        name: "heisenberg3".into(),
        parametrization: h,
        mul_map: vec![a + &s[0], b + &s[1], &(c + &s[2]) + &(a * &s[1])],
        inv_map: vec![-a, -b, &(a * b) - c],
        identity: vec![q(0, 1); 3],
        basis: vec![Matrix::unit(3, 0, 1), Matrix::unit(3, 1, 2), Matrix::unit(3, 0, 2)],
        structure_constants: Some(structure(3, &[(0, 1, 2, 1)])),
    };
    Arc::new(LieGroupModel::new(spec).expect("heisenberg model is valid"))
}

/// SL(2) on the chart `a ≠ 0`: `[[a, b], [c, (1 + bc)/a]]`.
pub fn sl2() -> Group {
    let t = slot_params(3, 0);
    let s = slot_params(3, 3);
    let dd = |p: &[RF]| &(&RF::one() + &(&p[1] * &p[2])) / &p[0];
    let (d1, d2) = (dd(&t), dd(&s));
    let h = Matrix::from_rows(vec![vec![t[0].clone(), t[1].clone()], vec![t[2].clone(), d1.clone()]]);
    let spec = GroupSpec {
        name: "sl2".into(),
        parametrization: h,
        mul_map: vec![&(&t[0] * &s[0]) + &(&t[1] * &s[2]), &(&t[0] * &s[1]) + &(&t[1] * &d2), &(&t[2] * &s[0]) + &(&d1 * &s[2])],
        inv_map: vec![d1, -&t[1], -&t[2]],
        identity: vec![q(1, 1), q(0, 1), q(0, 1)],
        basis: vec![Matrix::from_ints(&[&[1, 0], &[0, -1]]), Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0)],
        structure_constants: Some(structure(3, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)])),
    };
    Arc::new(LieGroupModel::new(spec).expect("sl2 model is valid"))
}

/// The multiplicative group of nonzero rationals as 1×1 matrices.
pub fn gl1() -> Group {
    let t = slot_params(1, 0);
    let s = slot_params(1, 1);
    let spec = GroupSpec {
        name: "gl1".into(),
        parametrization: Matrix::from_rows(vec![vec![t[0].clone()]]),
        mul_map: vec![&t[0] * &s[0]],
        inv_map: vec![t[0].inv().expect("nonzero")],
        identity: vec![q(1, 1)],
        basis: vec![Matrix::identity(1)],
        structure_constants: Some(structure(1, &[])),
    };
    Arc::new(LieGroupModel::new(spec).expect("gl1 model is valid"))
}

pub fn by_name(name: &str) -> Result<Group> {
    match name {
        "heisenberg3" => Ok(heisenberg3()),
        "sl2" => Ok(sl2()),
        "gl1" => Ok(gl1()),
        other => Err(Error::Invalid(format!("unknown group model `{other}`"))),
    }
}
