//! Exhaustive enumeration of weight-4 eta quotients on Gamma_0(N)
//! satisfying the Newman-Ligozat cusp conditions, within a per-exponent
//! bound.
//!
//! The enumeration is a depth-first scan over exponent vectors with
//! branch-and-bound pruning. Every vector that satisfies the membership
//! conditions is a nonzero holomorphic form, so its vanishing orders at
//! the cusps are positive and their weighted total equals index/3 of the
//! valence budget. Those windows, the exact exponent-sum target, and
//! root-level domain propagation cut the space down to the feasible
//! region. The divisor flip delta -> N/delta maps solutions to solutions,
//! so only the half with ord(infinity) <= ord(0) is enumerated directly
//! and the rest is obtained by mirroring.

use rayon::prelude::*;

use crate::arith::{divisors, euler_phi, prime_factors, valuation};
use crate::qseries::{exponent_row, EtaQuotient};
use crate::spaces::dims;

const MAX_DIVISORS: usize = 16;

struct Func {
    coeffs: Vec<i64>,
    lo: i64,
    hi: i64,
    /// suffix_min[j] = sum over i >= j of min(c_i * domain_i)
    suffix_min: Vec<i64>,
    suffix_max: Vec<i64>,
}

fn div_floor(a: i64, b: i64) -> i64 {
    num_integer::Integer::div_floor(&a, &b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -num_integer::Integer::div_floor(&-a, &b)
}

struct Engine {
    level: u64,
    /// Divisors in descending assignment order.
    divs: Vec<u64>,
    /// Per-coordinate value windows after propagation.
    dlo: Vec<i64>,
    dhi: Vec<i64>,
    funcs: Vec<Func>,
    /// Parity masks (bit per prime) for the rational-square condition.
    parity_mask: Vec<u32>,
    weight_sum: i64,
    feasible: bool,
}

impl Engine {
    fn new(level: u64, bound: i64) -> Self {
        let mut divs = divisors(level);
        divs.reverse();
        let k = divs.len();
        assert!(k <= MAX_DIVISORS, "level has too many divisors");
        let d = dims(level);
        // 24 N * (order at one cusp) is at most 24 N * index / 3.
        let order_cap = 8 * level as i64 * d.index as i64;

        let mut funcs = Vec::new();
        let mut valence = vec![0i64; k];
        let mut valence_lo = 0i64;
        for &dd in &divisors(level) {
            let gd = num_integer::gcd(dd, level / dd);
            let coeffs: Vec<i64> = divs
                .iter()
                .map(|&delta| {
                    let g = num_integer::gcd(dd, delta);
                    (level * level / (dd * gd * delta) * g * g) as i64
                })
                .collect();
            let phi = euler_phi(gd) as i64;
            for (v, c) in valence.iter_mut().zip(&coeffs) {
                *v += phi * c;
            }
            // At d = N and d = 1 the order sum is N times the leading
            // exponent of the quotient and of its flip, each a positive
            // multiple of 24 for a cusp form.
            let lo = if dd == level || dd == 1 {
                24 * level as i64
            } else {
                1
            };
            valence_lo += phi * lo;
            funcs.push(Func {
                coeffs,
                lo,
                hi: order_cap,
                suffix_min: vec![],
                suffix_max: vec![],
            });
        }
        // Joint valence budget over all cusps.
        funcs.push(Func {
            coeffs: valence,
            lo: valence_lo,
            hi: order_cap,
            suffix_min: vec![],
            suffix_max: vec![],
        });
        // Mirror normalization: ord(infinity) <= ord(0), i.e.
        // sum (delta - N/delta) r_delta <= 0.
        let asym: Vec<i64> = divs
            .iter()
            .map(|&delta| delta as i64 - (level / delta) as i64)
            .collect();
        funcs.push(Func {
            coeffs: asym,
            lo: i64::MIN / 4,
            hi: 0,
            suffix_min: vec![],
            suffix_max: vec![],
        });

        let parity_mask = divs
            .iter()
            .map(|&d| {
                prime_factors(level)
                    .iter()
                    .enumerate()
                    .fold(0u32, |m, (i, &p)| m | (((valuation(d, p) % 2) as u32) << i))
            })
            .collect();

        let mut engine = Engine {
            level,
            divs,
            dlo: vec![-bound; k],
            dhi: vec![bound; k],
            funcs,
            parity_mask,
            weight_sum: 8,
            feasible: true,
        };
        engine.propagate();
        engine.build_suffixes();
        engine
    }

    /// Root-level interval propagation over all window constraints,
    /// shrinking per-coordinate domains to a fixpoint.
    fn propagate(&mut self) {
        let k = self.divs.len();
        for _ in 0..64 {
            let mut changed = false;
            // exponent-sum equality
            let smin: i64 = self.dlo.iter().sum();
            let smax: i64 = self.dhi.iter().sum();
            if smin > self.weight_sum || smax < self.weight_sum {
                self.feasible = false;
                return;
            }
            for j in 0..k {
                let omin = smin - self.dlo[j];
                let omax = smax - self.dhi[j];
                let lo = self.weight_sum - omax;
                let hi = self.weight_sum - omin;
                if lo > self.dlo[j] {
                    self.dlo[j] = lo;
                    changed = true;
                }
                if hi < self.dhi[j] {
                    self.dhi[j] = hi;
                    changed = true;
                }
                if self.dlo[j] > self.dhi[j] {
                    self.feasible = false;
                    return;
                }
            }
            for f in &self.funcs {
                let term = |c: i64, lo: i64, hi: i64| -> (i64, i64) {
                    if c >= 0 {
                        (c * lo, c * hi)
                    } else {
                        (c * hi, c * lo)
                    }
                };
                let mut tmin = 0i64;
                let mut tmax = 0i64;
                for j in 0..k {
                    let (a, b) = term(f.coeffs[j], self.dlo[j], self.dhi[j]);
                    tmin += a;
                    tmax += b;
                }
                if tmin > f.hi || tmax < f.lo {
                    self.feasible = false;
                    return;
                }
                for j in 0..k {
                    let c = f.coeffs[j];
                    if c == 0 {
                        continue;
                    }
                    let (a, b) = term(c, self.dlo[j], self.dhi[j]);
                    let omin = tmin - a;
                    let omax = tmax - b;
                    // c * r_j must fit inside [f.lo - omax, f.hi - omin]
                    let (rlo, rhi) = if c > 0 {
                        (div_ceil(f.lo - omax, c), div_floor(f.hi - omin, c))
                    } else {
                        (div_ceil(f.hi - omin, c), div_floor(f.lo - omax, c))
                    };
                    if rlo > self.dlo[j] {
                        self.dlo[j] = rlo;
                        changed = true;
                    }
                    if rhi < self.dhi[j] {
                        self.dhi[j] = rhi;
                        changed = true;
                    }
                    if self.dlo[j] > self.dhi[j] {
                        self.feasible = false;
                        return;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn build_suffixes(&mut self) {
        let k = self.divs.len();
        for f in &mut self.funcs {
            f.suffix_min = vec![0i64; k + 1];
            f.suffix_max = vec![0i64; k + 1];
            for j in (0..k).rev() {
                let c = f.coeffs[j];
                let (a, b) = if c >= 0 {
                    (c * self.dlo[j], c * self.dhi[j])
                } else {
                    (c * self.dhi[j], c * self.dlo[j])
                };
                f.suffix_min[j] = f.suffix_min[j + 1] + a;
                f.suffix_max[j] = f.suffix_max[j + 1] + b;
            }
        }
    }

    /// Feasible value range for coordinate `j` given partial functional
    /// values; empty ranges come back inverted.
    fn value_range(&self, j: usize, partials: &[i64], count: i64, tail_lo: i64, tail_hi: i64) -> (i64, i64) {
        // tail_lo/tail_hi: sums of domain bounds for coordinates after j
        let need = self.weight_sum - count;
        let mut lo = (need - tail_hi).max(self.dlo[j]);
        let mut hi = (need - tail_lo).min(self.dhi[j]);
        if lo > hi {
            return (1, 0);
        }
        for (f, &p) in self.funcs.iter().zip(partials) {
            let c = f.coeffs[j];
            let smin = f.suffix_min[j + 1];
            let smax = f.suffix_max[j + 1];
            if c == 0 {
                if p + smax < f.lo || p + smin > f.hi {
                    return (1, 0);
                }
                continue;
            }
            let a = f.lo - smax - p;
            let b = f.hi - smin - p;
            let (rlo, rhi) = if c > 0 {
                (div_ceil(a, c), div_floor(b, c))
            } else {
                (div_ceil(b, c), div_floor(a, c))
            };
            lo = lo.max(rlo);
            hi = hi.min(rhi);
            if lo > hi {
                return (1, 0);
            }
        }
        (lo, hi)
    }

    /// Handle the last two coordinates: the final one is forced by the
    /// exponent-sum target, so scan the penultimate value, reject cheaply
    /// on the divisibility and parity conditions, and only then check the
    /// order windows.
    fn last_two(&self, r: &mut [i64], partials: &[i64], count: i64, parity: u32, out: &mut Vec<Vec<i64>>) {
        let k = self.divs.len();
        let (jx, jy) = (k - 2, k - 1);
        let (dx, dy) = (self.divs[jx] as i64, self.divs[jy] as i64);
        let n = self.level as i64;
        let f1_p: i64 = (0..jx).map(|i| self.divs[i] as i64 * r[i]).sum();
        let f2_p: i64 = (0..jx).map(|i| (self.level / self.divs[i]) as i64 * r[i]).sum();
        let need = self.weight_sum - count;
        let xlo = self.dlo[jx].max(need - self.dhi[jy]);
        let xhi = self.dhi[jx].min(need - self.dlo[jy]);
        for x in xlo..=xhi {
            let y = need - x;
            let f1 = f1_p + dx * x + dy * y;
            if f1 % 24 != 0 {
                continue;
            }
            let f2 = f2_p + (n / dx) * x + (n / dy) * y;
            if f2 % 24 != 0 {
                continue;
            }
            let p = parity
                ^ (if x % 2 != 0 { self.parity_mask[jx] } else { 0 })
                ^ (if y % 2 != 0 { self.parity_mask[jy] } else { 0 });
            if p != 0 {
                continue;
            }
            let ok = self.funcs.iter().zip(partials).all(|(f, &pp)| {
                let v = pp + f.coeffs[jx] * x + f.coeffs[jy] * y;
                v >= f.lo && v <= f.hi
            });
            if ok {
                r[jx] = x;
                r[jy] = y;
                out.push(r.to_vec());
            }
        }
    }

    fn dfs(
        &self,
        j: usize,
        r: &mut [i64],
        partials: &mut [i64],
        count: i64,
        parity: u32,
        tail_lo: &[i64],
        tail_hi: &[i64],
        out: &mut Vec<Vec<i64>>,
    ) {
        let k = self.divs.len();
        if j == k - 2 {
            self.last_two(r, partials, count, parity, out);
            return;
        }
        let (lo, hi) = self.value_range(j, partials, count, tail_lo[j + 1], tail_hi[j + 1]);
        for x in lo..=hi {
            r[j] = x;
            for (f, p) in self.funcs.iter().zip(partials.iter_mut()) {
                *p += f.coeffs[j] * x;
            }
            let pbit = if x % 2 != 0 { self.parity_mask[j] } else { 0 };
            self.dfs(j + 1, r, partials, count + x, parity ^ pbit, tail_lo, tail_hi, out);
            for (f, p) in self.funcs.iter().zip(partials.iter_mut()) {
                *p -= f.coeffs[j] * x;
            }
        }
        r[j] = 0;
    }

    fn run(&self) -> Vec<Vec<i64>> {
        if !self.feasible {
            return Vec::new();
        }
        let k = self.divs.len();
        if k == 1 {
            // only r = (8) is possible; check it directly
            let r = vec![self.weight_sum];
            let f1 = self.divs[0] as i64 * r[0];
            if f1 % 24 == 0 && f1 > 0 {
                return vec![r];
            }
            return Vec::new();
        }
        let mut tail_lo = vec![0i64; k + 1];
        let mut tail_hi = vec![0i64; k + 1];
        for j in (0..k).rev() {
            tail_lo[j] = tail_lo[j + 1] + self.dlo[j];
            tail_hi[j] = tail_hi[j + 1] + self.dhi[j];
        }
        if k == 2 {
            let mut r = vec![0i64; k];
            let partials = vec![0i64; self.funcs.len()];
            let mut out = Vec::new();
            self.last_two(&mut r, &partials, 0, 0, &mut out);
            return out;
        }
        let (lo, hi) = self.value_range(0, &vec![0i64; self.funcs.len()], 0, tail_lo[1], tail_hi[1]);
        (lo..=hi)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|x| {
                let mut r = vec![0i64; k];
                r[0] = x;
                let mut partials: Vec<i64> =
                    self.funcs.iter().map(|f| f.coeffs[0] * x).collect();
                let pbit = if x % 2 != 0 { self.parity_mask[0] } else { 0 };
                let mut out = Vec::new();
                self.dfs(1, &mut r, &mut partials, x, pbit, &tail_lo, &tail_hi, &mut out);
                out
            })
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            })
    }
}

/// All weight-4 eta quotients at the given level that satisfy the cusp
/// membership conditions with every exponent bounded by `bound` in
/// absolute value. The result is sorted by (leading exponent, exponent row
/// over ascending divisors) and is deterministic.
pub fn search_cusp_quotients(level: u64, bound: u32) -> Vec<EtaQuotient> {
    assert!(level >= 1 && bound >= 1);
    let engine = Engine::new(level, bound as i64);
    let half = engine.run();

    let k = engine.divs.len();
    let mut found: Vec<EtaQuotient> = Vec::with_capacity(half.len() * 2);
    for r in half {
        // mirror under delta -> N/delta; both sides satisfy the conditions
        let mirrored: Vec<i64> = (0..k).map(|j| r[k - 1 - j]).collect();
        found.push(EtaQuotient::new(
            level,
            engine.divs.iter().copied().zip(r.iter().copied()),
        ));
        if mirrored != r {
            found.push(EtaQuotient::new(
                level,
                engine.divs.iter().copied().zip(mirrored.into_iter()),
            ));
        }
    }
    found.sort_by_key(|e| (e.weighted_sum() / 24, exponent_row(e)));
    found.dedup();
    found
}
