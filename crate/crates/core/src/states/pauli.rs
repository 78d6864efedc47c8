//! Single-qubit Pauli basis and small matrix helpers.

use num_complex::Complex64;

pub type Matrix2 = [[Complex64; 2]; 2];
pub type Matrix4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub const IDENTITY: Matrix2 = [[ONE, ZERO], [ZERO, ONE]];
pub const SIGMA_X: Matrix2 = [[ZERO, ONE], [ONE, ZERO]];
pub const SIGMA_Y: Matrix2 = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
pub const SIGMA_Z: Matrix2 = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];

/// σ1, σ2, σ3 in order.
pub const PAULIS: [Matrix2; 3] = [SIGMA_X, SIGMA_Y, SIGMA_Z];

/// Kronecker product `a ⊗ b` in the |00⟩,|01⟩,|10⟩,|11⟩ ordering.
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn adjoint2(a: &Matrix2) -> Matrix2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn mul2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn scale2(a: &Matrix2, k: f64) -> Matrix2 {
    [[a[0][0] * k, a[0][1] * k], [a[1][0] * k, a[1][1] * k]]
}

pub fn mul4(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn adjoint4(a: &Matrix4) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[j][i].conj();
        }
    }
    out
}

pub fn trace4(a: &Matrix4) -> Complex64 {
    (0..4).map(|i| a[i][i]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Matrix2, b: &Matrix2) -> bool {
        (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).norm() < 1e-15))
    }

    #[test]
    fn paulis_are_hermitian_unitary_traceless() {
        for s in &PAULIS {
            assert!(close(s, &adjoint2(s)));
            assert!(close(&mul2(s, &adjoint2(s)), &IDENTITY));
            assert_eq!(s[0][0] + s[1][1], ZERO);
        }
    }

    #[test]
    fn pauli_product_rule() {
        // σx σy = i σz
        let xy = mul2(&SIGMA_X, &SIGMA_Y);
        let iz = [[SIGMA_Z[0][0] * I, ZERO], [ZERO, SIGMA_Z[1][1] * I]];
        assert!(close(&xy, &iz));
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let id4 = kron(&IDENTITY, &IDENTITY);
        for (i, row) in id4.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { ONE } else { ZERO });
            }
        }
        assert_eq!(trace4(&kron(&SIGMA_Z, &SIGMA_Z)), ZERO);
    }
}
