use std::fmt;
use std::sync::Arc;

/// Ordered list of parameter names shared by the polynomials of one computation.
///
/// Declaration order is the variable order of the graded-lex monomial order:
/// the first symbol is the largest.
#[derive(Clone)]
pub struct Symbols(Arc<[String]>);

impl Symbols {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if !out.contains(&n) {
                out.push(n);
            }
        }
        Symbols(out.into())
    }

    pub fn empty() -> Self {
        Symbols(Arc::from(Vec::<String>::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|s| s == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn is_superset_of(&self, other: &Symbols) -> bool {
        self == other || other.0.iter().all(|s| self.contains(s))
    }

    /// `self` followed by the names of `other` that are not already present.
    pub fn union(&self, other: &Symbols) -> Symbols {
        if self.is_superset_of(other) {
            return self.clone();
        }
        if other.is_superset_of(self) && other.0.starts_with(&self.0) {
            return other.clone();
        }
        let mut names: Vec<String> = self.0.to_vec();
        for s in other.0.iter() {
            if !names.contains(s) {
                names.push(s.clone());
            }
        }
        Symbols(names.into())
    }

    /// Position of every symbol of `self` inside `target`.
    pub(crate) fn embedding_into(&self, target: &Symbols) -> Vec<usize> {
        self.0
            .iter()
            .map(|s| target.index_of(s).expect("target universe is a superset"))
            .collect()
    }
}

impl PartialEq for Symbols {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Symbols {}

impl fmt::Debug for Symbols {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_keeps_left_order() {
        let a = Symbols::new(["a", "b"]);
        let b = Symbols::new(["c", "a"]);
        assert_eq!(a.union(&b).names(), &["a", "b", "c"]);
        assert_eq!(Symbols::empty().union(&b), b);
    }

    #[test]
    fn duplicates_collapse() {
        assert_eq!(Symbols::new(["a", "a", "b"]).len(), 2);
    }
}
