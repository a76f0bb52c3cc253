//! Word lengths and balls with respect to the standard generating sets.
//!
//! `ZPower`, `Free` and `CyclicZ` have closed forms. `Heisenberg` and
//! `LamplighterZ` lengths come from a breadth-first search of the Cayley
//! graph, exact up to a radius cap and reported as [`Error::ExceedsCap`]
//! beyond it.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};

/// Default radius cap for BFS-backed word lengths.
pub const WORD_LENGTH_CAP: u32 = 12;

/// Largest ball [`ball`] will enumerate.
pub const MAX_BALL_ELEMENTS: usize = 5_000_000;

/// Exact word lengths up to `cap`, computed once by BFS.
#[derive(Debug, Clone)]
pub struct CappedMetric {
    descriptor: GroupDescriptor,
    cap: u32,
    lengths: HashMap<GroupElement, u32>,
    sphere_sizes: Vec<u64>,
}

impl CappedMetric {
    pub fn new(descriptor: GroupDescriptor, cap: u32) -> Result<Self> {
        let layers = bfs_layers(descriptor, cap, MAX_BALL_ELEMENTS)?;
        let sphere_sizes = layers.iter().map(|l| l.len() as u64).collect();
        let lengths = layers
            .into_iter()
            .enumerate()
            .flat_map(|(r, layer)| layer.into_iter().map(move |g| (g, r as u32)))
            .collect();
        Ok(CappedMetric {
            descriptor,
            cap,
            lengths,
            sphere_sizes,
        })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.descriptor
    }

    /// `None` when the element lies outside the cap ball.
    pub fn length(&self, g: &GroupElement) -> Option<u32> {
        self.lengths.get(g).copied()
    }

    pub fn sphere_sizes(&self) -> &[u64] {
        &self.sphere_sizes
    }
}

fn default_metric(descriptor: GroupDescriptor) -> &'static CappedMetric {
    static HEISENBERG: OnceLock<CappedMetric> = OnceLock::new();
    static LAMPLIGHTER: OnceLock<CappedMetric> = OnceLock::new();
    let cell = match descriptor {
        GroupDescriptor::Heisenberg => &HEISENBERG,
        GroupDescriptor::LamplighterZ => &LAMPLIGHTER,
        _ => unreachable!("closed-form metric"),
    };
    cell.get_or_init(|| CappedMetric::new(descriptor, WORD_LENGTH_CAP).expect("cap ball is small"))
}

impl GroupElement {
    /// Word length with respect to the standard generators.
    pub fn word_length(&self) -> Result<u32> {
        let desc = self.descriptor();
        if let Some(v) = self.as_vector() {
            return Ok(v.iter().map(|x| x.unsigned_abs()).sum::<u64>() as u32);
        }
        if let Some(w) = self.as_word() {
            return Ok(w.len() as u32);
        }
        if let (Some(r), GroupDescriptor::CyclicZ(m)) = (self.as_residue(), desc) {
            return Ok(r.min(m - r) as u32);
        }
        default_metric(desc)
            .length(self)
            .ok_or_else(|| Error::ExceedsCap {
                element: self.to_string(),
                cap: WORD_LENGTH_CAP,
            })
    }

    /// Word length if it is at most `radius`, `None` if it is larger.
    ///
    /// For capped metrics this errors only when `radius` itself exceeds the cap.
    pub fn length_within(&self, radius: u32) -> Result<Option<u32>> {
        if self.descriptor().has_capped_metric() && radius > WORD_LENGTH_CAP {
            return Err(Error::BallNotEnumerable {
                descriptor: self.descriptor(),
                radius,
                reason: "radius exceeds the word-length cap",
            });
        }
        match self.word_length() {
            Ok(l) if l <= radius => Ok(Some(l)),
            Ok(_) | Err(Error::ExceedsCap { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

fn bfs_layers(
    descriptor: GroupDescriptor,
    radius: u32,
    limit: usize,
) -> Result<Vec<Vec<GroupElement>>> {
    let gens = GroupElement::standard_generators(descriptor);
    let id = GroupElement::identity(descriptor);
    let mut seen: HashMap<GroupElement, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut layers = vec![vec![id]];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in layers.last().expect("nonempty") {
            for s in &gens {
                let h = g.multiply(s)?;
                if seen.insert(h.clone(), ()).is_none() {
                    next.push(h);
                }
            }
        }
        if seen.len() > limit {
            return Err(Error::BallNotEnumerable {
                descriptor,
                radius,
                reason: "ball too large",
            });
        }
        layers.push(next);
    }
    Ok(layers)
}

/// All elements of word length at most `radius`, in BFS order.
pub fn ball(descriptor: GroupDescriptor, radius: u32) -> Result<Vec<GroupElement>> {
    if descriptor.has_capped_metric() && radius > WORD_LENGTH_CAP {
        return Err(Error::BallNotEnumerable {
            descriptor,
            radius,
            reason: "radius exceeds the word-length cap",
        });
    }
    Ok(bfs_layers(descriptor, radius, MAX_BALL_ELEMENTS)?
        .into_iter()
        .flatten()
        .collect())
}

/// Cardinality of the radius ball, by closed form where one exists.
pub fn ball_size(descriptor: GroupDescriptor, radius: u32) -> Result<u64> {
    let r = radius as u64;
    Ok(match descriptor {
        GroupDescriptor::ZPower(d) => {
            // sum_k 2^k C(d,k) C(r,k)
            let d = d as u64;
            let mut total = 0u64;
            for k in 0..=d.min(r) {
                total += (1u64 << k) * binomial(d, k) * binomial(r, k);
            }
            total
        }
        GroupDescriptor::Free(d) => {
            let d = d as u64;
            let mut total = 1u64;
            let mut sphere = 2 * d;
            for _ in 0..r {
                total = total.checked_add(sphere).ok_or(Error::BallNotEnumerable {
                    descriptor,
                    radius,
                    reason: "ball size overflows u64",
                })?;
                sphere = sphere.saturating_mul(2 * d - 1);
            }
            total
        }
        GroupDescriptor::CyclicZ(m) => m.min(2 * r + 1),
        GroupDescriptor::Heisenberg | GroupDescriptor::LamplighterZ => {
            if radius > WORD_LENGTH_CAP {
                return Err(Error::BallNotEnumerable {
                    descriptor,
                    radius,
                    reason: "radius exceeds the word-length cap",
                });
            }
            default_metric(descriptor).sphere_sizes()[..=radius as usize]
                .iter()
                .sum()
        }
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// BFS over `steps` from the identity, keeping elements within `radius`.
/// Used for generation checks on measure supports.
pub(crate) fn reachable_within(
    descriptor: GroupDescriptor,
    steps: &[GroupElement],
    radius: u32,
) -> Result<HashMap<GroupElement, ()>> {
    let id = GroupElement::identity(descriptor);
    let mut seen = HashMap::new();
    seen.insert(id.clone(), ());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in steps {
            let h = g.multiply(s)?;
            if seen.contains_key(&h) || h.length_within(radius)?.is_none() {
                continue;
            }
            seen.insert(h.clone(), ());
            if seen.len() > MAX_BALL_ELEMENTS {
                return Err(Error::BallNotEnumerable {
                    descriptor,
                    radius,
                    reason: "ball too large",
                });
            }
            queue.push_back(h);
        }
    }
    Ok(seen)
}
