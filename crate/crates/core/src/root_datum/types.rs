//! Root systems of the classical and exceptional types.
//!
//! `B_n`, `C_n` and `D_n` use the standard coordinates on `Z^n`. `A_n`, `G_2`,
//! `F_4` and `E_6` are built from their Cartan matrices with roots written in
//! fundamental-weight coordinates and coroots in simple-coroot coordinates, so
//! that every coordinate is an integer and the roots span `X*`.

use std::collections::VecDeque;

use crate::root_datum::{CoweightVec, RootSystem, WeightVec};
use crate::scalar::Scalar;

fn build<S: Scalar>(dim: usize, pairs: Vec<(Vec<i64>, Vec<i64>)>) -> RootSystem<S> {
    let (roots, coroots): (Vec<_>, Vec<_>) = pairs
        .into_iter()
        .map(|(r, c)| (WeightVec::from_ints(&r), CoweightVec::from_ints(&c)))
        .unzip();
    RootSystem::new(dim, roots, coroots).expect("built-in root system is valid")
}

fn unit(n: usize, i: usize, v: i64) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = v;
    e
}

fn pair(n: usize, i: usize, a: i64, j: usize, b: i64) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] += a;
    e[j] += b;
    e
}

/// `B_n`: roots `+-e_i`, `+-e_i +- e_j`; coroots `+-2e_i`, `+-e_i +- e_j`.
pub fn b_n<S: Scalar>(n: usize) -> RootSystem<S> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            pairs.push((unit(n, i, s), unit(n, i, 2 * s)));
        }
    }
    pairs.extend(long_pairs(n));
    build(n, pairs)
}

/// `C_n`: roots `+-2e_i`, `+-e_i +- e_j`; coroots `+-e_i`, `+-e_i +- e_j`.
pub fn c_n<S: Scalar>(n: usize) -> RootSystem<S> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            pairs.push((unit(n, i, 2 * s), unit(n, i, s)));
        }
    }
    pairs.extend(long_pairs(n));
    build(n, pairs)
}

/// `D_n`: roots `+-e_i +- e_j`.
pub fn d_n<S: Scalar>(n: usize) -> RootSystem<S> {
    build(n, long_pairs(n))
}

fn long_pairs(n: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let v = pair(n, i, a, j, b);
                pairs.push((v.clone(), v));
            }
        }
    }
    pairs
}

/// Root system with the given Cartan matrix `A[i][j] = <alpha_j, alpha_i^vee>`.
pub fn from_cartan<S: Scalar>(cartan: &[Vec<i64>]) -> RootSystem<S> {
    let n = cartan.len();
    let simple_root = |j: usize| -> Vec<i64> { (0..n).map(|k| cartan[k][j]).collect() };
    let mut seen = std::collections::HashSet::new();
    let mut pairs = Vec::new();
    let mut queue = VecDeque::new();
    for j in 0..n {
        queue.push_back((simple_root(j), unit(n, j, 1)));
    }
    while let Some((r, c)) = queue.pop_front() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for i in 0..n {
            // <beta, alpha_i^vee> is the i-th fundamental-weight coordinate.
            let k = r[i];
            let ai = simple_root(i);
            let r2: Vec<i64> = (0..n).map(|t| r[t] - k * ai[t]).collect();
            // <alpha_i, beta^vee>
            let m: i64 = (0..n).map(|t| ai[t] * c[t]).sum();
            let c2: Vec<i64> = (0..n).map(|t| c[t] - if t == i { m } else { 0 }).collect();
            if !seen.contains(&r2) {
                queue.push_back((r2, c2));
            }
        }
        pairs.push((r, c));
    }
    build(n, pairs)
}

pub fn a_n<S: Scalar>(n: usize) -> RootSystem<S> {
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    from_cartan(&cartan)
}

pub fn g2<S: Scalar>() -> RootSystem<S> {
    from_cartan(&[vec![2, -3], vec![-1, 2]])
}

pub fn f4<S: Scalar>() -> RootSystem<S> {
    from_cartan(&[
        vec![2, -1, 0, 0],
        vec![-1, 2, -2, 0],
        vec![0, -1, 2, -1],
        vec![0, 0, -1, 2],
    ])
}

pub fn e6<S: Scalar>() -> RootSystem<S> {
    from_cartan(&[
        vec![2, 0, -1, 0, 0, 0],
        vec![0, 2, 0, -1, 0, 0],
        vec![-1, 0, 2, -1, 0, 0],
        vec![0, -1, -1, 2, -1, 0],
        vec![0, 0, 0, -1, 2, -1],
        vec![0, 0, 0, 0, -1, 2],
    ])
}

/// Orthogonal direct sum on the concatenated coordinates.
pub fn product<S: Scalar>(a: &RootSystem<S>, b: &RootSystem<S>) -> RootSystem<S> {
    let dim = a.dim() + b.dim();
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for i in 0..a.len() {
        let mut r = a.root(i).0.clone();
        r.extend(std::iter::repeat_n(S::zero(), b.dim()));
        let mut c = a.coroot(i).0.clone();
        c.extend(std::iter::repeat_n(S::zero(), b.dim()));
        roots.push(WeightVec(r));
        coroots.push(CoweightVec(c));
    }
    for i in 0..b.len() {
        let mut r = vec![S::zero(); a.dim()];
        r.extend(b.root(i).0.iter().cloned());
        let mut c = vec![S::zero(); a.dim()];
        c.extend(b.coroot(i).0.iter().cloned());
        roots.push(WeightVec(r));
        coroots.push(CoweightVec(c));
    }
    RootSystem::new(dim, roots, coroots).expect("product of valid systems is valid")
}

/// Parses names such as `A1`, `B3`, `C2`, `D4`, `G2`, `F4`, `E6`, `A1xA1`.
pub fn by_name<S: Scalar>(name: &str) -> Option<RootSystem<S>> {
    let parts: Vec<&str> = name.split(['x', 'X', '*']).collect();
    if parts.len() > 1 {
        let mut acc = by_name::<S>(parts[0])?;
        for p in &parts[1..] {
            acc = product(&acc, &by_name::<S>(p)?);
        }
        return Some(acc);
    }
    let name = name.trim();
    let (kind, rank) = name.split_at(1);
    let rank: usize = rank.parse().ok()?;
    match (kind.to_ascii_uppercase().as_str(), rank) {
        (_, 0) => None,
        ("A", n) => Some(a_n(n)),
        ("B", n) if n >= 2 => Some(b_n(n)),
        ("C", n) if n >= 2 => Some(c_n(n)),
        ("D", n) if n >= 3 => Some(d_n(n)),
        ("G", 2) => Some(g2()),
        ("F", 4) => Some(f4()),
        ("E", 6) => Some(e6()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn root_counts() {
        assert_eq!(a_n::<Q>(1).len(), 2);
        assert_eq!(a_n::<Q>(2).len(), 6);
        assert_eq!(b_n::<Q>(2).len(), 8);
        assert_eq!(c_n::<Q>(3).len(), 18);
        assert_eq!(d_n::<Q>(4).len(), 24);
        assert_eq!(g2::<Q>().len(), 12);
        assert_eq!(f4::<Q>().len(), 48);
        assert_eq!(e6::<Q>().len(), 72);
    }

    #[test]
    fn a1_is_sl2() {
        let a1 = a_n::<Q>(1);
        assert!(a1.index_of(&WeightVec::from_ints(&[2])).is_some());
        assert_eq!(
            a1.coroot(a1.index_of(&WeightVec::from_ints(&[2])).unwrap())
                .0[0],
            Q::from_int(1)
        );
    }

    #[test]
    fn names() {
        assert_eq!(by_name::<Q>("A1xA1").unwrap().len(), 4);
        assert_eq!(by_name::<Q>("B3").unwrap().len(), 18);
        assert!(by_name::<Q>("Z9").is_none());
        assert!(by_name::<Q>("B1").is_none());
    }
}
