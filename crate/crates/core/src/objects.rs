//! Object kinds stored in a [`DataSet`]: real vectors, integer sets and strings.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// The kind of object held by a data set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    Vector,
    Set,
    Text,
}

impl ObjectKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ObjectKind::Vector => "vectors",
            ObjectKind::Set => "sets",
            ObjectKind::Text => "strings",
        }
    }
}

/// Common behaviour of everything a [`DataSet`] can hold.
pub trait DataObject: Clone + fmt::Debug + Send + Sync {
    const KIND: ObjectKind;

    /// Dimension for vectors; `None` for kinds without a fixed shape.
    fn dim(&self) -> Option<usize> {
        None
    }
}

/// A point in `R^k` with finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorObj(Vec<f64>);

impl VectorObj {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidObject("vector of dimension 0".into()));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidObject(format!(
                "non-finite coordinate {} at index {i}",
                coords[i]
            )));
        }
        Ok(VectorObj(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl DataObject for VectorObj {
    const KIND: ObjectKind = ObjectKind::Vector;

    fn dim(&self) -> Option<usize> {
        Some(self.0.len())
    }
}

/// A subset of the integer universe `{0, .., k-1}`, stored as a strictly
/// increasing sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SetObj(Vec<u32>);

impl SetObj {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidObject(format!(
                "set elements not strictly increasing: {} then {}",
                w[0], w[1]
            )));
        }
        Ok(SetObj(elements))
    }

    /// Like [`SetObj::new`], additionally requiring every element `< universe`.
    pub fn with_universe(elements: Vec<u32>, universe: u32) -> Result<Self> {
        let set = Self::new(elements)?;
        if let Some(&max) = set.0.last() {
            if max >= universe {
                return Err(Error::InvalidObject(format!(
                    "element {max} outside universe of size {universe}"
                )));
            }
        }
        Ok(set)
    }

    /// Sorts and deduplicates arbitrary input.
    pub fn from_unsorted(mut elements: Vec<u32>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        SetObj(elements)
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl DataObject for SetObj {
    const KIND: ObjectKind = ObjectKind::Set;
}

/// A string, held as Unicode scalar values so edit distance works per character.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct StringObj(Vec<char>);

impl StringObj {
    pub fn new(text: &str) -> Self {
        StringObj(text.chars().collect())
    }

    pub fn chars(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<&str> for StringObj {
    fn from(s: &str) -> Self {
        StringObj::new(s)
    }
}

impl fmt::Display for StringObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

impl fmt::Debug for StringObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_string())
    }
}

impl DataObject for StringObj {
    const KIND: ObjectKind = ObjectKind::Text;
}

/// Homogeneous collection of objects; an object's id is its position.
#[derive(Clone, Debug, PartialEq)]
pub struct DataSet<T> {
    objects: Vec<T>,
}

impl<T: DataObject> DataSet<T> {
    /// Checks that all objects share one dimension (where the kind has one).
    pub fn new(objects: Vec<T>) -> Result<Self> {
        if let Some(first) = objects.first().and_then(DataObject::dim) {
            for o in &objects[1..] {
                let d = o.dim().unwrap_or(first);
                if d != first {
                    return Err(Error::DimensionMismatch {
                        left: first,
                        right: d,
                    });
                }
            }
        }
        Ok(DataSet { objects })
    }

    pub fn kind(&self) -> ObjectKind {
        T::KIND
    }

    pub fn dim(&self) -> Option<usize> {
        self.objects.first().and_then(DataObject::dim)
    }
}

impl<T> DataSet<T> {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[T] {
        &self.objects
    }

    pub fn get(&self, id: usize) -> Option<&T> {
        self.objects.get(id)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.objects.iter()
    }

    pub fn into_inner(self) -> Vec<T> {
        self.objects
    }
}

impl<T> Index<usize> for DataSet<T> {
    type Output = T;

    fn index(&self, id: usize) -> &T {
        &self.objects[id]
    }
}

impl<'a, T> IntoIterator for &'a DataSet<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.objects.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_rejects_empty_and_nan() {
        assert!(VectorObj::new(vec![]).is_err());
        assert!(VectorObj::new(vec![1.0, f64::NAN]).is_err());
        assert!(VectorObj::new(vec![1.0, f64::INFINITY]).is_err());
        assert_eq!(VectorObj::new(vec![0.5]).unwrap().dim(), Some(1));
    }

    #[test]
    fn set_invariants() {
        assert!(SetObj::new(vec![1, 1]).is_err());
        assert!(SetObj::new(vec![2, 1]).is_err());
        assert!(SetObj::with_universe(vec![0, 9], 10).is_ok());
        assert!(SetObj::with_universe(vec![0, 10], 10).is_err());
        assert_eq!(SetObj::from_unsorted(vec![3, 1, 3]).elements(), &[1, 3]);
    }

    #[test]
    fn dataset_rejects_mixed_dimensions() {
        let a = VectorObj::new(vec![0.0, 1.0]).unwrap();
        let b = VectorObj::new(vec![0.0]).unwrap();
        assert!(matches!(
            DataSet::new(vec![a, b]),
            Err(Error::DimensionMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn string_counts_scalar_values() {
        let s = StringObj::new("näive");
        assert_eq!(s.len(), 5);
        assert_eq!(s.to_string(), "näive");
    }
}
