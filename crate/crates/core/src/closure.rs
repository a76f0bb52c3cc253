//! Budget-bounded semigroup closure.
//!
//! The semigroup generated by a walk tail is infinite, so closures are
//! truncated to a word-length ball: the worklist starts from the generators
//! inside the ball and multiplies each retained element by every generator
//! on both sides, keeping products that land in the ball. A result is
//! `exhausted` when the worklist drains before any budget trips.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;
use std::io::Write;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group::{ball_size, GroupDescriptor, GroupElement, WORD_LENGTH_CAP};
use crate::walk::{csv_err, WalkTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClosureBudget {
    /// Word-length cap on retained elements.
    pub radius: u32,
    pub max_elements: usize,
    /// Cap on multiplications performed.
    pub max_products: u64,
}

impl ClosureBudget {
    pub fn new(radius: u32, max_elements: usize, max_products: u64) -> Result<Self> {
        let b = ClosureBudget {
            radius,
            max_elements,
            max_products,
        };
        b.validate()?;
        Ok(b)
    }

    /// A budget limited only by `radius`.
    pub fn radius(radius: u32) -> Self {
        ClosureBudget {
            radius,
            max_elements: 5_000_000,
            max_products: u64::MAX,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radius == 0 || self.max_elements == 0 || self.max_products == 0 {
            return Err(Error::InvalidArgument(
                "closure budget fields must be positive".into(),
            ));
        }
        Ok(())
    }

    fn check_for(&self, descriptor: GroupDescriptor) -> Result<()> {
        self.validate()?;
        if descriptor.has_capped_metric() && self.radius > WORD_LENGTH_CAP {
            return Err(Error::InvalidArgument(format!(
                "radius {} exceeds the word-length cap {WORD_LENGTH_CAP} for {descriptor}",
                self.radius
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    descriptor: GroupDescriptor,
    elements: BTreeSet<GroupElement>,
    budget: ClosureBudget,
    exhausted: bool,
    generator_range: (usize, usize),
    products_performed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Present,
    AbsentWithinBudget,
    Unknown,
}

impl Membership {
    pub fn as_str(&self) -> &'static str {
        match self {
            Membership::Present => "present",
            Membership::AbsentWithinBudget => "absent",
            Membership::Unknown => "unknown",
        }
    }
}

/// Truncated closure of `generators` under the group product.
pub fn closure(generators: &[GroupElement], budget: ClosureBudget) -> Result<ClosureResult> {
    closure_with_range(generators, budget, (1, generators.len()))
}

fn closure_with_range(
    generators: &[GroupElement],
    budget: ClosureBudget,
    generator_range: (usize, usize),
) -> Result<ClosureResult> {
    let first = generators
        .first()
        .ok_or(Error::EmptyInput("closure needs at least one generator"))?;
    let descriptor = first.descriptor();
    budget.check_for(descriptor)?;
    for g in generators {
        g.check_descriptor(descriptor)?;
    }
    let radius = budget.radius;

    let mut gens: Vec<GroupElement> = generators.to_vec();
    gens.sort();
    gens.dedup();

    // |x g| >= |g| - |x|, so a generator longer than 2r cannot bring a
    // ball element back into the ball.
    let prune_unknown = !descriptor.has_capped_metric() || WORD_LENGTH_CAP >= 2 * radius;
    let mut seeds = Vec::new();
    let mut multipliers = Vec::new();
    for g in &gens {
        match g.word_length() {
            Ok(l) => {
                if l <= radius {
                    seeds.push(g.clone());
                }
                if l <= 2 * radius {
                    multipliers.push(g.clone());
                }
            }
            Err(Error::ExceedsCap { .. }) => {
                if !prune_unknown {
                    multipliers.push(g.clone());
                }
            }
            Err(e) => return Err(e),
        }
    }

    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut queue: VecDeque<GroupElement> = VecDeque::new();
    let mut products = 0u64;
    let mut exhausted = true;
    for s in seeds {
        if seen.len() >= budget.max_elements {
            exhausted = false;
            break;
        }
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }

    'work: while exhausted {
        let Some(x) = queue.pop_front() else { break };
        for g in &multipliers {
            let sides: &[bool] = if descriptor.is_abelian() {
                &[true]
            } else {
                &[true, false]
            };
            for &right in sides {
                if products >= budget.max_products {
                    exhausted = false;
                    break 'work;
                }
                products += 1;
                let p = if right {
                    x.multiply(g)?
                } else {
                    g.multiply(&x)?
                };
                if seen.contains(&p) || p.length_within(radius)?.is_none() {
                    continue;
                }
                if seen.len() >= budget.max_elements {
                    exhausted = false;
                    break 'work;
                }
                seen.insert(p.clone());
                queue.push_back(p);
            }
        }
    }

    Ok(ClosureResult {
        descriptor,
        elements: seen.into_iter().collect(),
        budget,
        exhausted,
        generator_range,
        products_performed: products,
    })
}

/// Truncated closure of `{X_n, ..., X_N}` for a trace of length `N`.
pub fn closure_of_tail(
    trace: &WalkTrace,
    n: usize,
    budget: ClosureBudget,
) -> Result<ClosureResult> {
    let len = trace.len();
    if n == 0 || n > len {
        return Err(Error::InvalidArgument(format!(
            "tail index {n} outside 1..={len}"
        )));
    }
    closure_with_range(&trace.positions()[n - 1..], budget, (n, len))
}

impl ClosureResult {
    pub fn descriptor(&self) -> GroupDescriptor {
        self.descriptor
    }

    pub fn elements(&self) -> &BTreeSet<GroupElement> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn budget(&self) -> ClosureBudget {
        self.budget
    }

    pub fn radius(&self) -> u32 {
        self.budget.radius
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    /// 1-based `(n, N)` indices of the generators used.
    pub fn generator_range(&self) -> (usize, usize) {
        self.generator_range
    }

    pub fn products_performed(&self) -> u64 {
        self.products_performed
    }

    pub fn contains(&self, g: &GroupElement) -> Result<Membership> {
        g.check_descriptor(self.descriptor)?;
        if self.elements.contains(g) {
            return Ok(Membership::Present);
        }
        let within = g.length_within(self.budget.radius)?.is_some();
        Ok(if within && self.exhausted {
            Membership::AbsentWithinBudget
        } else {
            Membership::Unknown
        })
    }

    /// `|elements ∩ ball(r)| / |ball(r)|`.
    pub fn coverage_fraction(&self, r: u32) -> Result<Ratio<u64>> {
        if r == 0 || r > self.budget.radius {
            return Err(Error::InvalidArgument(format!(
                "coverage radius {r} must lie in 1..={}",
                self.budget.radius
            )));
        }
        let total = ball_size(self.descriptor, r)?;
        let mut inside = 0u64;
        for g in &self.elements {
            if g.length_within(r)?.is_some() {
                inside += 1;
            }
        }
        Ok(Ratio::new(inside, total))
    }

    /// Number of retained elements on each sphere, radius 0 first.
    pub fn sphere_counts(&self) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; self.budget.radius as usize + 1];
        for g in &self.elements {
            let l = g
                .length_within(self.budget.radius)?
                .expect("retained elements lie in the ball");
            counts[l as usize] += 1;
        }
        Ok(counts)
    }

    /// Sorted canonical element list with a `#` header.
    pub fn dump(&self, extra_metadata: &[String]) -> String {
        let mut out = String::new();
        for line in extra_metadata {
            let _ = writeln!(out, "# {line}");
        }
        let b = self.budget;
        let _ = writeln!(
            out,
            "# closure group={} generators={}..{} radius={} max_elements={} max_products={} exhausted={} products={} elements={}",
            self.descriptor,
            self.generator_range.0,
            self.generator_range.1,
            b.radius,
            b.max_elements,
            b.max_products,
            self.exhausted,
            self.products_performed,
            self.elements.len(),
        );
        let mut texts: Vec<String> = self.elements.iter().map(|g| g.to_string()).collect();
        texts.sort();
        for t in texts {
            let _ = writeln!(out, "{t}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessEntry {
    pub index: usize,
    pub status: Membership,
    /// Word length of `X_i`, `None` beyond the metric cap.
    pub word_length: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseWitnessReport {
    pub closure: ClosureResult,
    pub entries: Vec<WitnessEntry>,
}

impl InverseWitnessReport {
    pub fn present(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == Membership::Present)
            .count()
    }

    /// Present entries over all entries.
    pub fn present_fraction(&self) -> f64 {
        if self.entries.is_empty() {
            return 0.0;
        }
        self.present() as f64 / self.entries.len() as f64
    }

    /// Entries whose inverse lies inside the budget ball, the only ones the
    /// truncated closure can decide.
    pub fn in_ball(&self) -> usize {
        let r = self.closure.radius();
        self.entries
            .iter()
            .filter(|e| e.word_length.is_some_and(|l| l <= r))
            .count()
    }

    /// Present entries over in-ball entries.
    pub fn present_fraction_in_ball(&self) -> f64 {
        match self.in_ball() {
            0 => 0.0,
            k => self.present() as f64 / k as f64,
        }
    }

    /// CSV with columns `i, status, word_length`.
    pub fn write_csv<W: Write>(&self, mut out: W, extra_metadata: &[String]) -> Result<()> {
        for line in extra_metadata {
            writeln!(out, "# {line}")?;
        }
        let (n, big_n) = self.closure.generator_range();
        writeln!(
            out,
            "# inverse-witness generators={n}..{big_n} radius={} exhausted={} present={} in_ball={}",
            self.closure.radius(),
            self.closure.exhausted(),
            self.present(),
            self.in_ball()
        )?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["i", "status", "word_length"])
            .map_err(csv_err)?;
        for e in &self.entries {
            let len = e
                .word_length
                .map_or_else(|| format!(">{WORD_LENGTH_CAP}"), |l| l.to_string());
            w.write_record([e.index.to_string(), e.status.as_str().to_string(), len])
                .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// For each `i` in `n..=N`, whether `X_i^-1` lies in the truncated closure
/// of `{X_n, ..., X_N}`.
pub fn inverse_witness_report(
    trace: &WalkTrace,
    n: usize,
    budget: ClosureBudget,
) -> Result<InverseWitnessReport> {
    let closure = closure_of_tail(trace, n, budget)?;
    let mut entries = Vec::with_capacity(trace.len() + 1 - n);
    for i in n..=trace.len() {
        let x = trace.position(i).expect("index in range");
        let word_length = match x.word_length() {
            Ok(l) => Some(l),
            Err(Error::ExceedsCap { .. }) => None,
            Err(e) => return Err(e),
        };
        entries.push(WitnessEntry {
            index: i,
            status: closure.contains(&x.invert())?,
            word_length,
        });
    }
    Ok(InverseWitnessReport { closure, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ball;
    use crate::walk::{generate_walk, SymmetricMeasure};

    fn ints(xs: &[i64]) -> Vec<GroupElement> {
        xs.iter()
            .map(|&x| GroupElement::vector(vec![x]).unwrap())
            .collect()
    }

    fn values(c: &ClosureResult) -> Vec<i64> {
        let mut v: Vec<i64> = c
            .elements()
            .iter()
            .map(|g| g.as_vector().unwrap()[0])
            .collect();
        v.sort();
        v
    }

    #[test]
    fn integer_examples() {
        let c = closure(&ints(&[2, 3]), ClosureBudget::radius(10)).unwrap();
        assert!(c.exhausted());
        assert_eq!(values(&c), (2..=10).collect::<Vec<_>>());

        let c = closure(&ints(&[1, -1]), ClosureBudget::radius(3)).unwrap();
        assert!(c.exhausted());
        assert_eq!(values(&c), (-3..=3).collect::<Vec<_>>());
    }

    #[test]
    fn free_monoid_on_one_letter() {
        let c = closure(
            &[GroupElement::free(2, &[1]).unwrap()],
            ClosureBudget::radius(4),
        )
        .unwrap();
        assert!(c.exhausted());
        let words: Vec<Vec<i32>> = c
            .elements()
            .iter()
            .map(|g| g.as_word().unwrap().to_vec())
            .collect();
        assert_eq!(
            words,
            vec![vec![1], vec![1, 1], vec![1, 1, 1], vec![1, 1, 1, 1]]
        );
    }

    #[test]
    fn membership_tristate() {
        let c = closure(&ints(&[2, 3]), ClosureBudget::radius(10)).unwrap();
        let q = |x: i64| c.contains(&GroupElement::vector(vec![x]).unwrap()).unwrap();
        assert_eq!(q(7), Membership::Present);
        assert_eq!(q(1), Membership::AbsentWithinBudget);
        assert_eq!(q(11), Membership::Unknown);
        assert!(c.contains(&GroupElement::cyclic(3, 1).unwrap()).is_err());
    }

    #[test]
    fn budgets_clear_the_exhausted_flag() {
        let b = ClosureBudget::new(10, 3, u64::MAX).unwrap();
        let c = closure(&ints(&[1]), b).unwrap();
        assert!(!c.exhausted());
        assert_eq!(c.len(), 3);
        assert_eq!(
            c.contains(&GroupElement::vector(vec![-1]).unwrap())
                .unwrap(),
            Membership::Unknown
        );

        let b = ClosureBudget::new(10, 100, 2).unwrap();
        let c = closure(&ints(&[1]), b).unwrap();
        assert!(!c.exhausted());
        assert_eq!(c.products_performed(), 2);
        assert!(ClosureBudget::new(0, 1, 1).is_err());
        assert!(closure(&[], ClosureBudget::radius(2)).is_err());
        assert!(closure(
            &[GroupElement::heisenberg(1, 0, 0)],
            ClosureBudget::radius(13)
        )
        .is_err());
    }

    #[test]
    fn identity_only_when_derived() {
        let c = closure(&ints(&[2, 3]), ClosureBudget::radius(10)).unwrap();
        assert!(!c
            .elements()
            .contains(&GroupElement::vector(vec![0]).unwrap()));
        let t: Vec<GroupElement> = [2]
            .iter()
            .map(|&v| GroupElement::cyclic(4, v).unwrap())
            .collect();
        let c = closure(&t, ClosureBudget::radius(2)).unwrap();
        assert!(c.elements().contains(&GroupElement::cyclic(4, 0).unwrap()));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn coverage_examples() {
        let c = closure(&ints(&[1, -1]), ClosureBudget::radius(5)).unwrap();
        assert_eq!(c.coverage_fraction(3).unwrap(), Ratio::new(1, 1));

        let c = closure(&ints(&[2, 3]), ClosureBudget::radius(10)).unwrap();
        assert_eq!(c.coverage_fraction(2).unwrap(), Ratio::new(1, 5));

        let c = closure(
            &[GroupElement::free(2, &[1]).unwrap()],
            ClosureBudget::radius(4),
        )
        .unwrap();
        assert_eq!(c.coverage_fraction(1).unwrap(), Ratio::new(1, 5));
        assert!(c.coverage_fraction(5).is_err());
    }

    #[test]
    fn long_generators_still_act() {
        // 7 lies outside radius 5 but 3 * ... + (-7) lands back inside
        let c = closure(&ints(&[3, -7]), ClosureBudget::radius(5)).unwrap();
        let v = values(&c);
        assert!(v.contains(&-4) && v.contains(&-1) && v.contains(&2));
    }

    #[test]
    fn torsion_trace_has_all_inverses() {
        let m = SymmetricMeasure::uniform_standard(GroupDescriptor::CyclicZ(6));
        let t = generate_walk(&m, 30, 9);
        let r = inverse_witness_report(&t, 1, ClosureBudget::radius(3)).unwrap();
        assert_eq!(r.present(), 30);
        assert_eq!(r.present_fraction(), 1.0);
    }

    #[test]
    fn integer_trace_with_both_signs() {
        let inc = ints(&[1, 1, -1, -1, -1]);
        let t = WalkTrace::from_increments(GroupDescriptor::ZPower(1), 0, inc).unwrap();
        let pos: Vec<i64> = t
            .positions()
            .iter()
            .map(|p| p.as_vector().unwrap()[0])
            .collect();
        assert_eq!(pos, [1, 2, 1, 0, -1]);
        let r = inverse_witness_report(&t, 1, ClosureBudget::radius(5)).unwrap();
        assert!(r.entries.iter().all(|e| e.status == Membership::Present));
        assert_eq!(values(&r.closure), (-5..=5).collect::<Vec<_>>());
    }

    #[test]
    fn free_trace_report_completes() {
        let m = SymmetricMeasure::uniform_standard(GroupDescriptor::Free(5));
        let t = generate_walk(&m, 50, 3);
        let r = inverse_witness_report(&t, 1, ClosureBudget::radius(6)).unwrap();
        assert_eq!(r.entries.len(), 50);
        assert!(r.entries.iter().any(|e| e.status != Membership::Present));
        let f = r.present_fraction();
        assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn semigroup_property_at_exhaustion() {
        let cases: Vec<Vec<GroupElement>> = vec![
            ints(&[2, -3]),
            ints(&[5, -4]),
            vec![
                GroupElement::free(2, &[1, 2]).unwrap(),
                GroupElement::free(2, &[-2, 1]).unwrap(),
            ],
            vec![
                GroupElement::heisenberg(1, 0, 0),
                GroupElement::heisenberg(0, 1, 0),
            ],
            vec![
                GroupElement::lamplighter(1, vec![0]),
                GroupElement::lamplighter(0, vec![0]),
            ],
            vec![
                GroupElement::vector(vec![1, 0]).unwrap(),
                GroupElement::vector(vec![-1, 2]).unwrap(),
            ],
        ];
        for gens in cases {
            let radius = 5;
            let c = closure(&gens, ClosureBudget::radius(radius)).unwrap();
            assert!(c.exhausted());
            for x in c.elements() {
                for y in c.elements() {
                    let xy = x.multiply(y).unwrap();
                    if xy.length_within(radius).unwrap().is_some() {
                        assert!(c.elements().contains(&xy), "{x} * {y} = {xy} missing");
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_in_generators() {
        let m = SymmetricMeasure::uniform_standard(GroupDescriptor::Heisenberg);
        let t = generate_walk(&m, 30, 4);
        let base = closure(&t.positions()[..10], ClosureBudget::radius(4)).unwrap();
        for extra in &t.positions()[10..] {
            let mut gens = t.positions()[..10].to_vec();
            gens.push(extra.clone());
            let bigger = closure(&gens, ClosureBudget::radius(4)).unwrap();
            assert!(base.elements().is_subset(bigger.elements()));
        }
    }

    #[test]
    fn sphere_counts_cover_ball() {
        let gens = GroupElement::standard_generators(GroupDescriptor::Free(2));
        let c = closure(&gens, ClosureBudget::radius(3)).unwrap();
        assert_eq!(c.len(), ball(GroupDescriptor::Free(2), 3).unwrap().len());
        assert_eq!(c.sphere_counts().unwrap(), vec![1, 4, 12, 36]);
    }

    #[test]
    fn dump_is_sorted_with_header() {
        let c = closure(&ints(&[3, -2]), ClosureBudget::radius(3)).unwrap();
        let text = c.dump(&[]);
        let mut lines = text.lines();
        assert!(lines
            .next()
            .unwrap()
            .starts_with("# closure group=ZPower(1) generators=1..2 radius=3"));
        let body: Vec<&str> = lines.collect();
        let mut sorted = body.clone();
        sorted.sort();
        assert_eq!(body, sorted);
        assert_eq!(body.len(), 7);
    }
}
