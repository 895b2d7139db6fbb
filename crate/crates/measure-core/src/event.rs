use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, BitOr, Mul, Not};
use std::sync::Arc;

use crate::error::MeasureError;

/// Ordered, named set of fine-grained histories.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SampleSpace {
    labels: Arc<Vec<String>>,
}

impl SampleSpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, MeasureError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(MeasureError::EmptySpace);
        }
        if labels.len() > 64 {
            return Err(MeasureError::SpaceTooLarge { size: labels.len(), cap: 64 });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(MeasureError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels: Arc::new(labels) })
    }

    /// Histories named `prefix0`, `prefix1`, ...
    pub fn numbered(prefix: &str, n: usize) -> Result<Self, MeasureError> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Event {
        Event::full(self.len())
    }

    /// Wraps a raw mask, rejecting bits outside the space.
    pub fn event(&self, bits: u64) -> Result<Event, MeasureError> {
        let e = Event(bits);
        if e.is_subset(self.full()) {
            Ok(e)
        } else {
            Err(MeasureError::EventOutOfRange { bits, size: self.len() })
        }
    }

    pub fn event_of(&self, labels: &[&str]) -> Result<Event, MeasureError> {
        let mut bits = 0u64;
        for l in labels {
            let i = self.index_of(l).ok_or_else(|| MeasureError::UnknownLabel(l.to_string()))?;
            bits |= 1 << i;
        }
        Ok(Event(bits))
    }

    /// Set notation such as `{AD,BD}`; the empty event prints as `{}`.
    pub fn describe(&self, e: Event) -> String {
        let names: Vec<&str> = e.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Every event of the space in canonical order. Only sensible for small spaces.
    pub fn all_events(&self) -> impl Iterator<Item = Event> {
        canonical_events(self.len())
    }
}

/// Subset of a sample space stored as a bitmask.
///
/// `+` is symmetric difference and `*` is intersection, so the events form a
/// Boolean ring. The ordering is by cardinality first, then by mask value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Event(pub u64);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub fn full(n: usize) -> Event {
        if n >= 64 {
            Event(u64::MAX)
        } else {
            Event((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Event {
        Event(1 << i)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Event) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Event) -> Event {
        Event(self.0 | other.0)
    }

    pub fn minus(self, other: Event) -> Event {
        Event(self.0 & !other.0)
    }

    /// Indices of the member histories, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Non-empty subsets of this event, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = Event> {
        let full = self.0;
        let mut cur = 0u64;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            cur = cur.wrapping_sub(full) & full;
            if cur == 0 {
                done = true;
                return None;
            }
            Some(Event(cur))
        })
    }
}

impl Add for Event {
    type Output = Event;
    fn add(self, rhs: Event) -> Event {
        Event(self.0 ^ rhs.0)
    }
}

impl Mul for Event {
    type Output = Event;
    fn mul(self, rhs: Event) -> Event {
        Event(self.0 & rhs.0)
    }
}

impl BitOr for Event {
    type Output = Event;
    fn bitor(self, rhs: Event) -> Event {
        Event(self.0 | rhs.0)
    }
}

impl Not for Event {
    type Output = Event;
    fn not(self) -> Event {
        Event(!self.0)
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

/// All events over `n` histories (including the empty one) ordered by (cardinality, mask).
pub fn canonical_events(n: usize) -> impl Iterator<Item = Event> {
    assert!(n < 64, "canonical_events needs n < 64");
    (0..=n).flat_map(move |k| fixed_weight(n, k))
}

fn fixed_weight(n: usize, k: usize) -> impl Iterator<Item = Event> {
    // Gosper's hack walks masks of popcount k in increasing order.
    let limit = 1u64 << n;
    let mut cur = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut first = true;
    std::iter::from_fn(move || {
        if first {
            first = false;
            return if cur < limit { Some(Event(cur)) } else { None };
        }
        if cur == 0 {
            return None;
        }
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = (((r ^ cur) >> 2) / c) | r;
        if cur < limit {
            Some(Event(cur))
        } else {
            None
        }
    })
}

/// Pairwise disjoint blocks covering the sample space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Event>,
    names: Vec<String>,
}

impl Partition {
    pub fn new(space: &SampleSpace, blocks: Vec<Event>) -> Result<Self, MeasureError> {
        let names = blocks
            .iter()
            .map(|b| b.iter().map(|i| space.label(i)).collect::<String>())
            .collect();
        Self::named(space, blocks, names)
    }

    pub fn named(space: &SampleSpace, blocks: Vec<Event>, names: Vec<String>) -> Result<Self, MeasureError> {
        if names.len() != blocks.len() {
            return Err(MeasureError::InvalidPartition("one name per block".into()));
        }
        let mut seen = Event::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(MeasureError::InvalidPartition("empty block".into()));
            }
            if !b.is_subset(space.full()) {
                return Err(MeasureError::InvalidPartition("block outside the space".into()));
            }
            if !b.is_disjoint(seen) {
                return Err(MeasureError::InvalidPartition("blocks overlap".into()));
            }
            seen = seen | *b;
        }
        if seen != space.full() {
            return Err(MeasureError::InvalidPartition("blocks do not cover the space".into()));
        }
        Ok(Self { blocks, names })
    }

    /// Parses `a,b|c,d` against the space labels. A block may be named as `A=a,b`;
    /// unnamed blocks take the concatenation of their labels.
    pub fn parse(space: &SampleSpace, text: &str) -> Result<Self, MeasureError> {
        let mut blocks = Vec::new();
        let mut names = Vec::new();
        for part in text.split('|') {
            let (name, members) = match part.split_once('=') {
                Some((n, m)) => (Some(n.trim().to_string()), m),
                None => (None, part),
            };
            let labels: Vec<&str> = members.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let block = space.event_of(&labels)?;
            names.push(name.unwrap_or_else(|| labels.concat()));
            blocks.push(block);
        }
        Self::named(space, blocks, names)
    }

    pub fn finest(space: &SampleSpace) -> Self {
        let blocks = (0..space.len()).map(Event::singleton).collect();
        Self::named(space, blocks, space.labels().to_vec()).expect("singletons partition the space")
    }

    pub fn trivial(space: &SampleSpace) -> Self {
        Self::named(space, vec![space.full()], vec!["Ω".into()]).expect("one block covers the space")
    }

    pub fn blocks(&self) -> &[Event] {
        &self.blocks
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Union of the blocks selected by `selector` (bit i picks block i).
    pub fn union_of(&self, selector: u64) -> Event {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| selector >> i & 1 == 1)
            .fold(Event::EMPTY, |acc, (_, b)| acc | *b)
    }

    /// Every event of the generated subalgebra, indexed by block selector.
    pub fn subalgebra(&self) -> Vec<Event> {
        (0..1u64 << self.len()).map(|s| self.union_of(s)).collect()
    }
}
