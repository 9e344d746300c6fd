use std::borrow::Borrow;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Opaque simplex identifier, unique across all dimensions of a complex.
///
/// Cloning is a reference-count bump; identifiers are copied around a lot by
/// the colimit and factorization code.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId(Arc<str>);

impl SimplexId {
    pub fn new(s: impl AsRef<str>) -> Self {
        SimplexId(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SimplexId {
    fn from(s: &str) -> Self {
        SimplexId::new(s)
    }
}

impl From<String> for SimplexId {
    fn from(s: String) -> Self {
        SimplexId(Arc::from(s))
    }
}

impl From<&String> for SimplexId {
    fn from(s: &String) -> Self {
        SimplexId::new(s)
    }
}

impl Borrow<str> for SimplexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl std::ops::Deref for SimplexId {
    type Target = str;

    fn deref(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for SimplexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Serialize for SimplexId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for SimplexId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d).map(SimplexId::from)
    }
}

/// Returns `base`, or `base` with primes appended until it is not in `taken`.
/// The chosen name is inserted into `taken`.
pub fn fresh_id(base: &SimplexId, taken: &mut HashSet<SimplexId>) -> SimplexId {
    if taken.insert(base.clone()) {
        return base.clone();
    }
    let mut name = base.as_str().to_owned();
    loop {
        name.push('\'');
        let candidate = SimplexId::from(name.as_str());
        if taken.insert(candidate.clone()) {
            return candidate;
        }
    }
}
