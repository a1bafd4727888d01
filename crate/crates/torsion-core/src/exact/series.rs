//! Formal series in inverse powers of the order: logarithmic composition of
//! the Olver expansions and the coefficients phi_j, phi-hat_{j,±}.

use crate::exact::olver::OlverTable;
use crate::exact::poly::RationalPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Coefficients of log(1 + sum_k A_k t^k) as a formal series, through the
/// order of the input list: F_j = A_j - (1/j) sum_{i=1}^{j-1} (j-i) A_i F_{j-i}.
pub fn log_compose(a: &[RationalPoly]) -> Vec<RationalPoly> {
    let jmax = a.len();
    let mut f: Vec<RationalPoly> = Vec::with_capacity(jmax);
    for j in 1..=jmax {
        let mut acc = a[j - 1].clone();
        for i in 1..j {
            let w = BigRational::new(BigInt::from(-((j - i) as i64)), BigInt::from(j as i64));
            acc += &(&a[i - 1] * &f[j - i - 1]).scale(&w);
        }
        f.push(acc);
    }
    f
}

/// Coefficients of exp(sum_k F_k t^k) - 1; the independent inverse used to
/// check log_compose: j E_j = sum_{k=1}^{j} k F_k E_{j-k} with E_0 = 1.
pub fn exp_compose(f: &[RationalPoly]) -> Vec<RationalPoly> {
    let jmax = f.len();
    let mut e: Vec<RationalPoly> = Vec::with_capacity(jmax);
    for j in 1..=jmax {
        let mut acc = RationalPoly::zero();
        for k in 1..=j {
            let term = if k == j {
                f[k - 1].clone()
            } else {
                &f[k - 1] * &e[j - k - 1]
            };
            acc += &term.scale(&BigRational::new(BigInt::from(k as i64), BigInt::from(j as i64)));
        }
        e.push(acc);
    }
    e
}

/// phi_j: coefficient of mu^{-j} in log(1 + sum U_k mu^{-k}), j = 1..jmax.
pub fn phi_all(table: &OlverTable, jmax: usize) -> Vec<RationalPoly> {
    let a: Vec<RationalPoly> = (1..=jmax).map(|k| table.u(k).clone()).collect();
    log_compose(&a)
}

/// phi-hat_{j,sign} for Robin constant sign*alpha: the log-composition of the
/// W series plus the constant term (-1)^{j+1} (sign*alpha)^j / j at degree 0.
pub fn phi_hat_all(
    table: &OlverTable,
    jmax: usize,
    alpha: &BigRational,
    sign: Sign,
) -> Vec<RationalPoly> {
    let signed_alpha = if sign == Sign::Plus {
        alpha.clone()
    } else {
        -alpha.clone()
    };
    let a: Vec<RationalPoly> = (1..=jmax)
        .map(|k| table.w_coeff(k, &signed_alpha))
        .collect();
    let mut psi = log_compose(&a);
    let mut pow = BigRational::one();
    for (idx, p) in psi.iter_mut().enumerate() {
        let j = idx + 1;
        pow *= &signed_alpha;
        // (-1)^{j+1} (signed alpha)^j / j
        let mut c = &pow / BigRational::from_integer(BigInt::from(j as i64));
        if j % 2 == 0 {
            c = -c;
        }
        let cur = p.coeff(0);
        p.set_coeff(0, cur + c);
    }
    psi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::rat;

    fn table() -> OlverTable {
        OlverTable::new(10)
    }

    #[test]
    fn log_compose_first_orders() {
        // F_1 = A_1, F_2 = A_2 - A_1^2/2
        let a1 = RationalPoly::monomial(rat(2, 3), 1);
        let a2 = RationalPoly::monomial(rat(1, 5), 2);
        let f = log_compose(&[a1.clone(), a2.clone()]);
        assert_eq!(f[0], a1);
        assert_eq!(&f[1], &(&a2 - &(&a1 * &a1).scale(&rat(1, 2))));
    }

    #[test]
    fn exp_undoes_log() {
        let a: Vec<RationalPoly> = vec![
            RationalPoly::from_coeffs(vec![rat(1, 2), rat(-1, 3)]),
            RationalPoly::from_coeffs(vec![rat(0, 1), rat(2, 7), rat(1, 4)]),
            RationalPoly::monomial(rat(-3, 5), 3),
            RationalPoly::from_coeffs(vec![rat(1, 9)]),
        ];
        let f = log_compose(&a);
        let back = exp_compose(&f);
        assert_eq!(back, a);
    }

    #[test]
    fn phi_one_is_u_one() {
        let t = table();
        let phi = phi_all(&t, 3);
        assert_eq!(&phi[0], t.u(1));
    }

    #[test]
    fn phi_hat_carries_constant_term() {
        let t = table();
        let alpha = rat(1, 2);
        let hat = phi_hat_all(&t, 2, &alpha, Sign::Plus);
        // j=1 constant: +alpha; j=2 constant: -alpha^2/2
        assert_eq!(hat[0].coeff(0), rat(1, 2));
        assert_eq!(hat[1].coeff(0), rat(-1, 8));
        // j=1 polynomial part: v_1 + alpha u
        let w1 = &(t.v(1).clone()) + &RationalPoly::monomial(rat(1, 2), 1);
        assert_eq!(hat[0].coeff(1), w1.coeff(1));
        assert_eq!(hat[0].coeff(3), w1.coeff(3));
    }

    #[test]
    fn vanishing_combination_sample() {
        // (2 phi_{2k-1} - hat_+ - hat_-)(lambda = 0) = 0
        let t = table();
        let alpha = rat(3, 2);
        let phi = phi_all(&t, 5);
        let hp = phi_hat_all(&t, 5, &alpha, Sign::Plus);
        let hm = phi_hat_all(&t, 5, &alpha, Sign::Minus);
        for j in [1usize, 3, 5] {
            let comb = &(&phi[j - 1].scale(&rat(2, 1)) - &hp[j - 1]) - &hm[j - 1];
            assert_eq!(comb.eval_at_one(), rat(0, 1), "j = {j}");
        }
        for j in [2usize, 4] {
            let comb = &hm[j - 1] - &hp[j - 1];
            assert_eq!(comb.eval_at_one(), rat(0, 1), "j = {j}");
        }
    }
}
