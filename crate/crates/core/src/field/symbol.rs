//! Interned symbol names and Frobenius-twisted indeterminates.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Name that houses the structural element θ.
pub const THETA: &str = "theta";
/// Name of the generator symbol injected by the reduction.
pub const GENERATOR: &str = "c";
/// Names with a fixed meaning in the expression grammar.
pub const RESERVED: [&str; 4] = [THETA, GENERATOR, "T", "S"];

/// An interned identifier. Equality is pointer equality, order is by string.
#[derive(Clone, Copy)]
pub struct Symbol(&'static str);

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static INTERNER: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        let mut set = interner().lock().expect("symbol interner poisoned");
        if let Some(s) = set.get(name) {
            return Symbol(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        set.insert(leaked);
        Symbol(leaked)
    }

    pub fn theta() -> Symbol {
        static S: OnceLock<Symbol> = OnceLock::new();
        *S.get_or_init(|| Symbol::new(THETA))
    }

    pub fn generator() -> Symbol {
        static S: OnceLock<Symbol> = OnceLock::new();
        *S.get_or_init(|| Symbol::new(GENERATOR))
    }

    pub fn as_str(&self) -> &'static str {
        self.0
    }

    pub fn is_theta(&self) -> bool {
        *self == Symbol::theta()
    }

    pub fn is_generator(&self) -> bool {
        *self == Symbol::generator()
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Symbol {}

impl std::hash::Hash for Symbol {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.0.as_ptr() as usize).hash(state)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            Ordering::Equal
        } else {
            self.0.cmp(other.0)
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// The indeterminate `name^(twist)`. Distinct twists are independent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedVar {
    pub name: Symbol,
    pub twist: i32,
}

impl TwistedVar {
    pub fn new(name: Symbol, twist: i32) -> Self {
        TwistedVar { name, twist }
    }

    pub fn theta(twist: i32) -> Self {
        TwistedVar::new(Symbol::theta(), twist)
    }

    pub fn shifted(self, k: i32) -> Self {
        TwistedVar {
            name: self.name,
            twist: self.twist + k,
        }
    }
}

impl fmt::Debug for TwistedVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TwistedVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}^({})", self.name, self.twist)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_and_order() {
        let a = Symbol::new("a");
        assert_eq!(a, Symbol::new("a"));
        assert!(Symbol::new("a") < Symbol::new("b"));
        let x = TwistedVar::new(a, 2);
        assert!(TwistedVar::new(a, 1) < x);
        assert!(x < TwistedVar::new(Symbol::new("b"), -3));
        assert_eq!(x.to_string(), "a^(2)");
    }
}
