//! Sets of component names with a deterministic order.
//!
//! Names compare case-insensitively first and by raw bytes second, so
//! `{b}` sorts before `{G}` and `{G,P}` before `{G,T}` before `{P,T}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::ModelSchema;

/// Orders two component names: case-insensitive, then ASCII.
pub fn compare_names(a: &str, b: &str) -> Ordering {
    let fold = |s: &str| s.bytes().map(|c| c.to_ascii_lowercase()).collect::<Vec<_>>();
    fold(a).cmp(&fold(b)).then_with(|| a.cmp(b))
}

/// A set of schema component names, kept sorted by [`compare_names`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComponentSet(Vec<String>);

impl ComponentSet {
    pub fn empty() -> Self {
        ComponentSet(Vec::new())
    }

    /// Builds a set from names that must all belong to `schema`.
    /// Duplicates collapse.
    pub fn new<I, S>(schema: &ModelSchema, names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let resolved = names
            .into_iter()
            .map(|n| schema.component(n.as_ref().trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::labels(resolved))
    }

    /// Builds a set of arbitrary labels, for games not compiled from a model.
    pub fn labels<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort_by(|a, b| compare_names(a, b));
        names.dedup();
        ComponentSet(names)
    }

    /// Parses `{b}`, `{P,G}`, `{}` or a bare comma list such as `P,G`.
    pub fn parse(schema: &ModelSchema, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = match (t.strip_prefix('{'), t.ends_with('}')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => t,
            _ => return Err(Error::UnknownAction(text.to_string())),
        };
        let names: Vec<&str> = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        Self::new(schema, names)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.iter().any(|n| *n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &ComponentSet) -> bool {
        self.0.iter().all(|n| other.contains(n))
    }

    /// All subsets of size `k`, in lexicographic order.
    pub fn subsets(&self, k: usize) -> Result<Vec<ComponentSet>> {
        let n = self.0.len();
        if k > n {
            return Err(Error::SpreadTooLarge { spread: k, size: n });
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(ComponentSet(idx.iter().map(|&i| self.0[i].clone()).collect()));
            // advance the rightmost index that still has room
            let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
                break;
            };
            idx[pos] += 1;
            for p in pos + 1..k {
                idx[p] = idx[p - 1] + 1;
            }
        }
        Ok(out)
    }
}

impl Ord for ComponentSet {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match compare_names(a, b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for ComponentSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ComponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

impl fmt::Debug for ComponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
