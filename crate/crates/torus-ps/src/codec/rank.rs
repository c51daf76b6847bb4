//! Colexicographic ranking of fixed-weight binary words.
//!
//! Bit `b` of a word of length `N` sits at position `N - 1 - b`, so the word
//! with all ones at the end has rank 0. With the positions of the ones
//! sorted as `p_1 < .. < p_k`, the rank is `sum C(p_i, i)`.

use malachite_base::num::arithmetic::traits::{BinomialCoefficient, DivExactAssign};
use malachite_base::num::logic::traits::SignificantBits;
use malachite_nz::natural::Natural;

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::from(0u32);
    }
    Natural::binomial_coefficient(Natural::from(n), Natural::from(k))
}

/// Bits needed for values in `[0, count)`.
pub fn width_of(count: &Natural) -> u64 {
    if *count <= 1u32 {
        0
    } else {
        (count - Natural::from(1u32)).significant_bits()
    }
}

/// Product of `lo..=hi` (1 when empty).
fn range_product(lo: u64, hi: u64) -> Natural {
    if lo > hi {
        return Natural::from(1u32);
    }
    if hi - lo < 16 {
        let mut acc = Natural::from(1u32);
        let mut small: u64 = 1;
        for x in lo..=hi {
            match small.checked_mul(x) {
                Some(s) => small = s,
                None => {
                    acc *= Natural::from(small);
                    small = x;
                }
            }
        }
        return acc * Natural::from(small);
    }
    let mid = lo + (hi - lo) / 2;
    range_product(lo, mid) * range_product(mid + 1, hi)
}

/// Positive value `m * 2^e` kept to about `prec` significant bits.
#[derive(Clone)]
struct Float {
    m: Natural,
    e: i64,
}

impl Float {
    fn exact(m: Natural) -> Float {
        Float { m, e: 0 }
    }

    fn top(&self) -> i64 {
        self.e + self.m.significant_bits() as i64
    }

    fn trunc(mut self, prec: u64) -> Float {
        let b = self.m.significant_bits();
        if b > prec {
            self.m >>= b - prec;
            self.e += (b - prec) as i64;
        }
        self
    }

    fn mul(&self, o: &Float, prec: u64) -> Float {
        Float { m: &self.m * &o.m, e: self.e + o.e }.trunc(prec)
    }

    fn add(&self, o: &Float, prec: u64) -> Float {
        let target = self.e.min(o.e).max(self.top().max(o.top()) - prec as i64 - 2);
        let at = |x: &Float| {
            if x.e >= target {
                &x.m << (x.e - target) as u64
            } else {
                &x.m >> (target - x.e) as u64
            }
        };
        Float { m: at(self) + at(o), e: target }.trunc(prec)
    }
}

struct Split {
    p: Float,
    q: Float,
    t: Float,
}

// term ratio C(p', i + 1) / C(p, i) for consecutive ones at p < p'
fn ratio(p: u64, p2: u64, i: u64) -> (Natural, Natural) {
    let num = range_product(p + 1, p2);
    let den = range_product(p - i + 1, p2 - i - 1) * Natural::from(i + 1);
    (num, den)
}

/// Terms walked from the largest down. Step `c` goes from the `c`-th largest
/// term to the next one, and `drop[c]` is the bit gap between the largest
/// term and the `c`-th one.
struct Series<'a> {
    pos: &'a [u64],
    base: usize,
    drop: Vec<f64>,
    prec: u64,
}

impl Series<'_> {
    fn steps(&self) -> usize {
        self.pos.len() - 1
    }

    // (numerator, denominator) of step c, the inverse of an ascending ratio
    fn step(&self, c: usize) -> (Natural, Natural) {
        let j = self.steps() - 1 - c;
        let (num, den) = ratio(self.pos[j], self.pos[j + 1], (self.base + j + 1) as u64);
        (den, num)
    }

    /// Precision for the part of the sum scaled by the `c`-th largest term.
    fn prec_at(&self, c: usize) -> u64 {
        self.prec.saturating_sub(self.drop[c] as u64).max(64)
    }

    // Over steps a..b: P and Q multiply the step ratios, and T / Q is the
    // sum of their prefix products. P is only needed on left branches. A
    // subtree scaled by the c-th term needs precision only down to that
    // term, which is what keeps the low end of the sum cheap.
    fn split(&self, a: usize, b: usize, need_p: bool) -> Split {
        let prec = self.prec_at(a);
        if b - a == 1 {
            let (num, den) = self.step(a);
            let num = Float::exact(num).trunc(prec);
            let p = if need_p { num.clone().trunc(self.prec_at(b)) } else { Float::exact(Natural::from(0u32)) };
            return Split { t: num, p, q: Float::exact(den).trunc(prec) };
        }
        let m = a + (b - a) / 2;
        let l = self.split(a, m, true);
        let r = self.split(m, b, need_p);
        let t = l.t.mul(&r.q, prec).add(&l.p.mul(&r.t, prec), prec);
        let p = if need_p { l.p.mul(&r.p, self.prec_at(b)) } else { Float::exact(Natural::from(0u32)) };
        Split { t, p, q: l.q.mul(&r.q, prec) }
    }
}

/// Upper estimate of the bit length of `C(n, k)`.
fn log2_binomial_bound(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let l: f64 = (0..k).map(|j| ((n - j) as f64).log2() - ((j + 1) as f64).log2()).sum();
    l.ceil() as u64 + 2
}

/// Rank of a word with `ones` ones among `word.len()` bits.
///
/// The sum is a hypergeometric series in the ones' positions. It is taken
/// from the largest term down by binary splitting, each subtree truncated
/// to a little more than the bits it contributes to the result. All
/// quantities are positive, so relative errors add up along the depth of
/// the recursion only; the margin keeps the absolute error below 1/4 and the
/// result is rounded.
pub fn rank(word: &[bool], ones: usize) -> Result<Natural> {
    let n = word.len();
    let mut pos: Vec<u64> = (0..n).filter(|&b| word[b]).map(|b| (n - 1 - b) as u64).collect();
    if pos.len() != ones {
        return Err(Error::WeightMismatch);
    }
    pos.reverse();
    // terms with p_i < i vanish, and only a prefix can
    let Some(i0) = (0..pos.len()).find(|&j| pos[j] > j as u64) else { return Ok(Natural::from(0u32)) };
    let rest = &pos[i0..];
    let k = rest.len();
    let last = binomial(rest[k - 1], (i0 + k) as u64);
    if k == 1 {
        return Ok(last);
    }
    // running sums of log2 x, for the bit size of each step ratio
    let top = rest[k - 1] as usize;
    let mut lg = vec![0f64; top + 1];
    for x in 2..=top {
        lg[x] = lg[x - 1] + (x as f64).log2();
    }
    let mut drop = vec![0f64; k];
    for c in 1..k {
        let j = k - 1 - c;
        let (p, p2, i) = (rest[j] as usize, rest[j + 1] as usize, i0 + j + 1);
        let up = lg[p2] - lg[p] - (lg[p2 - i - 1] - lg[p - i]) - ((i + 1) as f64).log2();
        drop[c] = drop[c - 1] + up;
    }
    let depth = 64 - (k as u64).leading_zeros() as u64;
    let prec = log2_binomial_bound(n as u64, ones as u64) + 64 + 4 * depth;
    // slack for the rounding of the bit gaps
    let drop = drop.into_iter().map(|d| (d - 8.0).max(0.0)).collect();
    let series = Series { pos: rest, base: i0, drop, prec };
    let s = series.split(0, k - 1, false);
    // last * (Q + T) / Q
    let num = Float::exact(last).mul(&s.q.add(&s.t, prec), prec);
    let shift = (prec + s.q.m.significant_bits()).saturating_sub(num.m.significant_bits());
    let quo = (&num.m << shift) / &s.q.m;
    let e = num.e - s.q.e - shift as i64;
    Ok(if e >= 0 {
        quo << e as u64
    } else {
        let k = (-e) as u64;
        (quo + (Natural::from(1u32) << (k - 1))) >> k
    })
}

/// Word of length `len` with `ones` ones and the given rank.
pub fn unrank(len: usize, ones: usize, r: &Natural) -> Result<Vec<bool>> {
    if ones > len {
        return Err(Error::WeightMismatch);
    }
    if *r >= binomial(len as u64, ones as u64) {
        return Err(Error::RankOutOfRange);
    }
    let mut word = vec![false; len];
    let mut r = r.clone();
    let mut i = ones as u64;
    if i == 0 {
        return Ok(word);
    }
    let mut p = len as u64 - 1;
    // c = C(p, i) throughout
    let mut c = binomial(p, i);
    loop {
        if c <= r {
            r -= &c;
            word[len - 1 - p as usize] = true;
            i -= 1;
            if i == 0 {
                break;
            }
            c *= Natural::from(i + 1);
            c.div_exact_assign(Natural::from(p));
            p -= 1;
            // now c = C(p, i) with the new p, i
        } else {
            c *= Natural::from(p - i);
            c.div_exact_assign(Natural::from(p));
            p -= 1;
        }
    }
    Ok(word)
}
