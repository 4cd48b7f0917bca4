use std::fmt;

use super::{Elem, Ring};
use crate::error::{Error, Result};

/// An element bundled with its ring, for API boundaries where operands may
/// come from different places and must be checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    value: Elem,
}

impl RingElement {
    pub fn new(ring: Ring, value: Elem) -> Result<Self> {
        ring.check(&value)?;
        Ok(RingElement { ring, value })
    }

    pub fn from_int(ring: &Ring, n: i64) -> Self {
        RingElement { ring: ring.clone(), value: ring.from_int(n) }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> RingElement {
        RingElement { ring: self.ring.clone(), value }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.add(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> RingElement {
        self.wrap(self.ring.neg(&self.value))
    }

    pub fn inv(&self) -> Result<RingElement> {
        Ok(self.wrap(self.ring.inv(&self.value)?))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }

    pub fn equals(&self, other: &RingElement) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.ring.equal(&self.value, &other.value))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.display_elem(&self.value))
    }
}
