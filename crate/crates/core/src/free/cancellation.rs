use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::free::{at_most_log2, cancel};
use crate::walk::csv_err;

/// Uniform reduced word of length `len` in `F_d`.
pub fn random_reduced_word<R: Rng>(rng: &mut R, d: usize, len: usize) -> Vec<i32> {
    let mut w: Vec<i32> = Vec::with_capacity(len);
    for _ in 0..len {
        let l = match w.last() {
            None => letter(d, rng.gen_range(0..2 * d)),
            Some(&prev) => {
                // skip the inverse of the previous letter
                let forbidden = index(d, -prev);
                let mut i = rng.gen_range(0..2 * d - 1);
                if i >= forbidden {
                    i += 1;
                }
                letter(d, i)
            }
        };
        w.push(l);
    }
    w
}

fn letter(d: usize, i: usize) -> i32 {
    if i < d {
        i as i32 + 1
    } else {
        -((i - d) as i32 + 1)
    }
}

fn index(d: usize, l: i32) -> usize {
    if l > 0 {
        l as usize - 1
    } else {
        d + (-l) as usize - 1
    }
}

/// `size` uniform reduced words of length `len`.
pub fn random_pool(d: usize, size: usize, len: usize, seed: u64) -> Vec<Vec<i32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| random_reduced_word(&mut rng, d, len))
        .collect()
}

/// Observed `(s, cancel)` pairs for one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationSample {
    pub length: usize,
    pub cancellations: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExceedanceRow {
    pub length: usize,
    pub trials: u64,
    /// Trials with `cancel > log2 s`.
    pub exceedances: u64,
    pub max_cancel: usize,
    /// `(2d-1)^(-log2 s)`.
    pub bound: f64,
}

impl ExceedanceRow {
    pub fn empirical(&self) -> f64 {
        self.exceedances as f64 / self.trials as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CancellationReport {
    pub d: usize,
    pub seed: u64,
    pub samples: Vec<CancellationSample>,
    pub rows: Vec<ExceedanceRow>,
}

impl CancellationReport {
    /// CSV rows `s,trials,exceedances,empirical,bound,max_cancel`.
    pub fn write_csv<W: Write>(&self, mut out: W, extra_metadata: &[String]) -> Result<()> {
        for line in extra_metadata {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "# cancellation d={} seed={}", self.d, self.seed)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "s",
            "trials",
            "exceedances",
            "empirical",
            "bound",
            "max_cancel",
        ])
        .map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                r.length.to_string(),
                r.trials.to_string(),
                r.exceedances.to_string(),
                format!("{:.6e}", r.empirical()),
                format!("{:.6e}", r.bound),
                r.max_cancel.to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// For each length `s`, draws `trials` uniform reduced words `X` of length
/// `s` and a word `w` from `pool`, and records `cancel(X, w)`.
pub fn cancellation_experiment(
    d: usize,
    lengths: &[usize],
    trials: u64,
    pool: &[Vec<i32>],
    seed: u64,
) -> Result<CancellationReport> {
    if d < 2 {
        return Err(Error::InvalidArgument(
            "free rank must be at least 2".into(),
        ));
    }
    if pool.is_empty() {
        return Err(Error::EmptyInput("cancellation pool is empty"));
    }
    for w in pool {
        let ok = w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= d)
            && w.windows(2).all(|p| p[0] != -p[1]);
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "pool word {w:?} is not reduced in F_{d}"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    let mut rows = Vec::new();
    for &s in lengths {
        let mut cancellations = Vec::with_capacity(trials as usize);
        let mut exceedances = 0;
        for _ in 0..trials {
            let x = random_reduced_word(&mut rng, d, s);
            let w = &pool[rng.gen_range(0..pool.len())];
            let c = cancel(&x, w);
            if !at_most_log2(c as u64, s as u64) {
                exceedances += 1;
            }
            cancellations.push(c);
        }
        let log_s = (s as f64).log2();
        rows.push(ExceedanceRow {
            length: s,
            trials,
            exceedances,
            max_cancel: cancellations.iter().copied().max().unwrap_or(0),
            bound: ((2 * d - 1) as f64).powf(-log_s),
        });
        samples.push(CancellationSample {
            length: s,
            cancellations,
        });
    }
    Ok(CancellationReport {
        d,
        seed,
        samples,
        rows,
    })
}
