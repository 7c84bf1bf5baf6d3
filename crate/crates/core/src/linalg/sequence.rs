use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Coordinate;
use crate::{Error, Result};

type Generator = Arc<dyn Fn(u64) -> usize + Send + Sync>;

/// Which family an [`UpdateSequence`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    RoundRobin,
    ExplicitList,
    CustomGenerator,
}

#[derive(Clone)]
enum Source {
    RoundRobin,
    Explicit(Vec<Coordinate>),
    Custom(Generator),
}

/// An infinite sequence of coordinates `i_1, i_2, ...` driving the
/// coordinate level updates.
///
/// Round-robin and explicit lists cycle forever and are fair by construction
/// (an explicit list must mention every coordinate). A custom generator maps
/// the 0-based call number to a 0-based coordinate; its fairness is the
/// caller's responsibility and only its range is checked.
#[derive(Clone)]
pub struct UpdateSequence {
    dim: usize,
    source: Source,
    calls: u64,
}

impl UpdateSequence {
    pub fn round_robin(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(UpdateSequence {
            dim,
            source: Source::RoundRobin,
            calls: 0,
        })
    }

    /// A list replayed cyclically. Rejected unless every coordinate appears.
    pub fn explicit(dim: usize, list: Vec<Coordinate>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut seen = vec![false; dim];
        for c in &list {
            seen[c.check(dim)?.index()] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::UnfairSequence { missing: missing + 1 });
        }
        Ok(UpdateSequence {
            dim,
            source: Source::Explicit(list),
            calls: 0,
        })
    }

    pub fn explicit_one_based(dim: usize, list: &[usize]) -> Result<Self> {
        let list = list
            .iter()
            .map(|&i| Coordinate::from_one_based(i).and_then(|c| c.check(dim)))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| match e {
                Error::IndexOutOfRange { index, .. } => Error::IndexOutOfRange { index, dim },
                e => e,
            })?;
        Self::explicit(dim, list)
    }

    pub fn custom<F>(dim: usize, generator: F) -> Result<Self>
    where
        F: Fn(u64) -> usize + Send + Sync + 'static,
    {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(UpdateSequence {
            dim,
            source: Source::Custom(Arc::new(generator)),
            calls: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> SequenceKind {
        match self.source {
            Source::RoundRobin => SequenceKind::RoundRobin,
            Source::Explicit(_) => SequenceKind::ExplicitList,
            Source::Custom(_) => SequenceKind::CustomGenerator,
        }
    }

    /// Number of indices produced so far.
    pub fn calls(&self) -> u64 {
        self.calls
    }

    /// Rewinds to `i_1`.
    pub fn reset(&mut self) {
        self.calls = 0;
    }

    /// A copy of this sequence rewound to `i_1`.
    pub fn restarted(&self) -> Self {
        let mut seq = self.clone();
        seq.reset();
        seq
    }

    /// The next index `i_n`. Only a custom generator can fail, by leaving `Ω`.
    pub fn next_index(&mut self) -> Result<Coordinate> {
        let n = self.calls;
        let index = match &self.source {
            Source::RoundRobin => Coordinate::new((n % self.dim as u64) as usize),
            Source::Explicit(list) => list[(n % list.len() as u64) as usize],
            Source::Custom(f) => Coordinate::new(f(n)).check(self.dim)?,
        };
        self.calls += 1;
        Ok(index)
    }
}

impl fmt::Debug for UpdateSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("UpdateSequence");
        s.field("dim", &self.dim).field("kind", &self.kind());
        if let Source::Explicit(list) = &self.source {
            s.field("list", list);
        }
        s.field("calls", &self.calls).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn take(seq: &mut UpdateSequence, k: usize) -> Vec<usize> {
        (0..k).map(|_| seq.next_index().unwrap().one_based()).collect()
    }

    #[test]
    fn round_robin_cycles() {
        let mut seq = UpdateSequence::round_robin(5).unwrap();
        assert_eq!(take(&mut seq, 6), [1, 2, 3, 4, 5, 1]);
    }

    #[test]
    fn explicit_list_replays() {
        let mut seq = UpdateSequence::explicit_one_based(3, &[3, 1, 2]).unwrap();
        assert_eq!(take(&mut seq, 4), [3, 1, 2, 3]);
        seq.reset();
        assert_eq!(take(&mut seq, 1), [3]);
    }

    #[test]
    fn explicit_list_must_be_fair() {
        assert_eq!(
            UpdateSequence::explicit_one_based(2, &[1, 1]).unwrap_err(),
            Error::UnfairSequence { missing: 2 }
        );
        assert!(matches!(
            UpdateSequence::explicit_one_based(2, &[1, 3]),
            Err(Error::IndexOutOfRange { index: 3, dim: 2 })
        ));
    }

    #[test]
    fn custom_generator_is_range_checked() {
        let mut seq = UpdateSequence::custom(3, |n| n as usize).unwrap();
        assert_eq!(take(&mut seq, 3), [1, 2, 3]);
        assert!(seq.next_index().is_err());
        assert_eq!(seq.kind(), SequenceKind::CustomGenerator);
    }
}
