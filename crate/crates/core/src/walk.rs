//! Symmetric step measures and reproducible walk traces.
//!
//! Weights are exact rationals. Sampling goes through a 64-bit cumulative
//! table built once per measure; that table is the only lossy step. Atoms
//! are kept sorted by their canonical text so the table, and therefore every
//! trace, depends only on the measure and the seed. The bit stream is
//! ChaCha8 seeded with `seed_from_u64`.

use std::fmt::Write as _;
use std::io::Write;

use num_rational::Ratio;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::metric::reachable_within;
use crate::group::{ball, GroupDescriptor, GroupElement, WORD_LENGTH_CAP};

pub type Weight = Ratio<i128>;

/// A finitely supported probability measure with `mu(g) = mu(g^-1)` intended.
///
/// Construction only checks positivity and normalization; symmetry is
/// checked by [`SymmetricMeasure::validate_symmetric`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricMeasure {
    descriptor: GroupDescriptor,
    atoms: Vec<(GroupElement, Weight)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ball_radius: u32,
    /// The group generated by the support reaches every element of the ball.
    pub ball_covered: bool,
    pub missing: usize,
}

impl SymmetricMeasure {
    pub fn new(descriptor: GroupDescriptor, atoms: Vec<(GroupElement, Weight)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyInput("measure with no atoms"));
        }
        let mut keyed: Vec<(String, GroupElement, Weight)> = Vec::with_capacity(atoms.len());
        for (g, w) in atoms {
            g.check_descriptor(descriptor)?;
            if w <= Weight::from_integer(0) {
                return Err(Error::InvalidMeasure(format!(
                    "atom {g} has nonpositive weight {w}"
                )));
            }
            keyed.push((g.to_string(), g, w));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(pair) = keyed.windows(2).find(|p| p[0].0 == p[1].0) {
            return Err(Error::InvalidMeasure(format!(
                "duplicate atom {}",
                pair[0].0
            )));
        }
        let total: Weight = keyed.iter().map(|k| k.2).sum();
        if total != Weight::from_integer(1) {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(SymmetricMeasure {
            descriptor,
            atoms: keyed.into_iter().map(|(_, g, w)| (g, w)).collect(),
        })
    }

    /// Uniform weights over the standard symmetric generating set.
    pub fn uniform_standard(descriptor: GroupDescriptor) -> Self {
        let gens = GroupElement::standard_generators(descriptor);
        let w = Weight::new(1, gens.len() as i128);
        SymmetricMeasure::new(descriptor, gens.into_iter().map(|g| (g, w)).collect())
            .expect("standard generators form a valid measure")
    }

    /// A measure on `Z^2` with a heavy tail along the diagonal and a small
    /// weight on the antidiagonal: atoms `±(k, k)` for `k <= cutoff` with
    /// weights proportional to `k^-alpha` summing to `1 - minor_weight`, and
    /// `±(1, -1)` sharing `minor_weight`.
    ///
    /// `k^-alpha` is quantized to a multiple of `2^-32` before the exact
    /// normalization, so integer `alpha` with small `k` is exact.
    pub fn heavy_tail_z2(alpha: f64, cutoff: u32, minor_weight: Weight) -> Result<Self> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "alpha = {alpha} must exceed 1"
            )));
        }
        if cutoff == 0 {
            return Err(Error::InvalidArgument("cutoff must be positive".into()));
        }
        let zero = Weight::from_integer(0);
        let one = Weight::from_integer(1);
        if minor_weight <= zero || minor_weight >= one {
            return Err(Error::InvalidArgument(format!(
                "minor_weight = {minor_weight} must lie in (0, 1)"
            )));
        }
        let scale = (1u64 << 32) as f64;
        let raw: Vec<i128> = (1..=cutoff)
            .map(|k| ((k as f64).powf(-alpha) * scale).round().max(1.0) as i128)
            .collect();
        let total: i128 = raw.iter().sum();
        let major = one - minor_weight;
        let mut atoms = Vec::with_capacity(2 * cutoff as usize + 2);
        for (k, n) in (1..=cutoff as i64).zip(&raw) {
            let w = major * Weight::new(*n, 2 * total);
            atoms.push((GroupElement::vector(vec![k, k])?, w));
            atoms.push((GroupElement::vector(vec![-k, -k])?, w));
        }
        let half_minor = minor_weight / 2;
        atoms.push((GroupElement::vector(vec![1, -1])?, half_minor));
        atoms.push((GroupElement::vector(vec![-1, 1])?, half_minor));
        SymmetricMeasure::new(GroupDescriptor::ZPower(2), atoms)
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.descriptor
    }

    /// Atoms in canonical-text order.
    pub fn atoms(&self) -> &[(GroupElement, Weight)] {
        &self.atoms
    }

    pub fn weight_of(&self, g: &GroupElement) -> Weight {
        self.atoms
            .iter()
            .find(|(h, _)| h == g)
            .map_or(Weight::from_integer(0), |(_, w)| *w)
    }

    /// Checks weight symmetry exactly, then whether the subgroup generated by
    /// the support reaches every element of the `ball_radius` ball. The
    /// generation check is a necessary condition only: a negative answer means
    /// "not covered within this radius".
    pub fn validate_symmetric(&self, ball_radius: u32) -> Result<ValidationReport> {
        for (g, w) in &self.atoms {
            let inv_w = self.weight_of(&g.invert());
            if inv_w != *w {
                return Err(Error::AsymmetricMeasure {
                    atom: g.to_string(),
                    weight: w.to_string(),
                    inverse_weight: inv_w.to_string(),
                });
            }
        }
        let target = ball(self.descriptor, ball_radius)?;
        let mut steps: Vec<GroupElement> = Vec::new();
        let mut longest = 0u32;
        for (g, _) in &self.atoms {
            for s in [g.clone(), g.invert()] {
                longest = longest.max(s.word_length().unwrap_or(WORD_LENGTH_CAP));
                if !steps.contains(&s) {
                    steps.push(s);
                }
            }
        }
        let mut search_radius = ball_radius.saturating_add(longest);
        if self.descriptor.has_capped_metric() {
            search_radius = search_radius.min(WORD_LENGTH_CAP);
        }
        let reached = reachable_within(self.descriptor, &steps, search_radius)?;
        let missing = target.iter().filter(|g| !reached.contains_key(*g)).count();
        Ok(ValidationReport {
            ball_radius,
            ball_covered: missing == 0,
            missing,
        })
    }

    fn cumulative_table(&self) -> Vec<u128> {
        let mut cum = Weight::from_integer(0);
        let mut table = Vec::with_capacity(self.atoms.len());
        for (i, (_, w)) in self.atoms.iter().enumerate() {
            cum += *w;
            if i + 1 == self.atoms.len() {
                table.push(1u128 << 64);
            } else {
                table.push(scaled_fraction(*cum.numer() as u128, *cum.denom() as u128));
            }
        }
        table
    }
}

// floor(p * 2^64 / q) for 0 <= p <= q < 2^127.
fn scaled_fraction(p: u128, q: u128) -> u128 {
    let whole = p / q;
    let mut rem = p % q;
    let mut frac = 0u128;
    for _ in 0..64 {
        rem <<= 1;
        frac <<= 1;
        if rem >= q {
            rem -= q;
            frac |= 1;
        }
    }
    (whole << 64) | frac
}

/// Draws atoms of a measure from a seeded ChaCha8 stream.
pub struct Sampler<'a> {
    measure: &'a SymmetricMeasure,
    table: Vec<u128>,
    rng: ChaCha8Rng,
}

impl<'a> Sampler<'a> {
    pub fn new(measure: &'a SymmetricMeasure, seed: u64) -> Self {
        Sampler {
            measure,
            table: measure.cumulative_table(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn sample_index(&mut self) -> usize {
        let u = self.rng.next_u64() as u128;
        self.table.partition_point(|&t| t <= u)
    }

    pub fn sample(&mut self) -> &'a GroupElement {
        let i = self.sample_index();
        &self.measure.atoms[i].0
    }
}

/// Positions `X_1..X_N` of a walk together with its increments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTrace {
    descriptor: GroupDescriptor,
    seed: u64,
    increments: Vec<GroupElement>,
    positions: Vec<GroupElement>,
}

/// `X_n = zeta_1 ... zeta_n` with `zeta_i` i.i.d. from `measure`.
pub fn generate_walk(measure: &SymmetricMeasure, n_steps: usize, seed: u64) -> WalkTrace {
    let mut sampler = Sampler::new(measure, seed);
    let mut increments = Vec::with_capacity(n_steps);
    let mut positions = Vec::with_capacity(n_steps);
    let mut x = GroupElement::identity(measure.descriptor());
    for _ in 0..n_steps {
        let z = sampler.sample().clone();
        x = x.multiply(&z).expect("atoms share the descriptor");
        increments.push(z);
        positions.push(x.clone());
    }
    WalkTrace {
        descriptor: measure.descriptor(),
        seed,
        increments,
        positions,
    }
}

impl WalkTrace {
    /// Rebuilds positions from increments.
    pub fn from_increments(
        descriptor: GroupDescriptor,
        seed: u64,
        increments: Vec<GroupElement>,
    ) -> Result<Self> {
        let mut positions = Vec::with_capacity(increments.len());
        let mut x = GroupElement::identity(descriptor);
        for z in &increments {
            x = x.multiply(z)?;
            positions.push(x.clone());
        }
        Ok(WalkTrace {
            descriptor,
            seed,
            increments,
            positions,
        })
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.descriptor
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn increments(&self) -> &[GroupElement] {
        &self.increments
    }

    pub fn positions(&self) -> &[GroupElement] {
        &self.positions
    }

    /// `X_n`, 1-based.
    pub fn position(&self, n: usize) -> Option<&GroupElement> {
        n.checked_sub(1).and_then(|i| self.positions.get(i))
    }

    /// The first `n` steps.
    pub fn truncated(&self, n: usize) -> WalkTrace {
        let n = n.min(self.len());
        WalkTrace {
            descriptor: self.descriptor,
            seed: self.seed,
            increments: self.increments[..n].to_vec(),
            positions: self.positions[..n].to_vec(),
        }
    }

    /// Line-oriented text: `#`-prefixed metadata lines (the `# trace` line
    /// carries group, seed and step count), then one increment per line.
    pub fn to_text(&self, extra_metadata: &[String]) -> String {
        let mut out = String::new();
        for line in extra_metadata {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(
            out,
            "# trace group={} seed={} steps={}",
            self.descriptor,
            self.seed,
            self.len()
        );
        for z in &self.increments {
            let _ = writeln!(out, "{z}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut header: Option<(GroupDescriptor, u64, usize)> = None;
        let mut increments = Vec::new();
        for line in text.lines() {
            if let Some(meta) = line.strip_prefix('#') {
                let meta = meta.trim();
                if let Some(fields) = meta.strip_prefix("trace ") {
                    header = Some(parse_trace_header(fields)?);
                }
                continue;
            }
            let (desc, _, _) =
                header.ok_or_else(|| Error::Parse("increment before '# trace' header".into()))?;
            increments.push(GroupElement::parse(desc, line)?);
        }
        let (desc, seed, steps) =
            header.ok_or_else(|| Error::Parse("missing '# trace' header".into()))?;
        if increments.len() != steps {
            return Err(Error::Parse(format!(
                "header announces {steps} steps, found {}",
                increments.len()
            )));
        }
        WalkTrace::from_increments(desc, seed, increments)
    }

    /// CSV of `(n, position)` with `#`-prefixed metadata lines first.
    pub fn write_positions_csv<W: Write>(
        &self,
        mut out: W,
        extra_metadata: &[String],
    ) -> Result<()> {
        for line in extra_metadata {
            writeln!(out, "# {line}")?;
        }
        writeln!(
            out,
            "# positions group={} seed={}",
            self.descriptor, self.seed
        )?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "position"]).map_err(csv_err)?;
        for (i, x) in self.positions.iter().enumerate() {
            w.write_record([(i + 1).to_string(), x.to_string()])
                .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn parse_trace_header(fields: &str) -> Result<(GroupDescriptor, u64, usize)> {
    let mut group = None;
    let mut seed = None;
    let mut steps = None;
    for kv in fields.split_whitespace() {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header field {kv:?}")))?;
        match k {
            "group" => group = Some(v.parse::<GroupDescriptor>()?),
            "seed" => seed = v.parse().ok(),
            "steps" => steps = v.parse().ok(),
            _ => {}
        }
    }
    match (group, seed, steps) {
        (Some(g), Some(s), Some(n)) => Ok((g, s, n)),
        _ => Err(Error::Parse(format!("incomplete trace header {fields:?}"))),
    }
}
