//! Unit quaternions `w + xi + yj + zk` as `[w, x, y, z]`.

pub type Quat = [f64; 4];

pub const ONE: Quat = [1.0, 0.0, 0.0, 0.0];

pub fn mul(a: &Quat, b: &Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

pub fn conj(a: &Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

pub fn norm(a: &Quat) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn normalize(a: &Quat) -> Quat {
    let n = norm(a);
    a.map(|x| x / n)
}

pub fn dist(a: &Quat, b: &Quat) -> f64 {
    norm(&[a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]])
}

/// `exp(v)` for a pure imaginary `v`.
pub fn exp(v: &[f64; 3]) -> Quat {
    let t = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if t < 1e-300 {
        return ONE;
    }
    let s = t.sin() / t;
    [t.cos(), v[0] * s, v[1] * s, v[2] * s]
}

/// Image of a word; letters are signed 1-based generator indices.
pub fn eval_word(word: &[i32], gens: &[Quat]) -> Quat {
    word.iter().fold(ONE, |acc, &l| {
        let g = gens[l.unsigned_abs() as usize - 1];
        mul(&acc, &if l > 0 { g } else { conj(&g) })
    })
}

/// Trace of the corresponding SU(2) matrix.
pub fn trace(a: &Quat) -> f64 {
    2.0 * a[0]
}
