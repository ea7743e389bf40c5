//! Syntax of the bounded temporal logic (BTL) and of monadic difference
//! logic (MDL), plus the syntactic analyses the monitor relies on.

mod btl;
mod mdl;
mod parse;

use std::fmt;

pub use btl::Btl;
pub use mdl::{DiffAtom, LiteralIndex, Mdl};
pub use parse::{parse_btl, parse_btl_with, PropTable};

/// Proposition `p_j`, `j >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PropId(u32);

impl PropId {
    /// Panics on index 0.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "proposition indices start at 1");
        PropId(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn pred(self) -> PredId {
        PredId(self.0)
    }
}

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

/// Monadic predicate `P_j`, in one-to-one correspondence with `p_j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PredId(u32);

impl PredId {
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "predicate indices start at 1");
        PredId(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn prop(self) -> PropId {
        PropId(self.0)
    }
}

impl fmt::Display for PredId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// First-order variable. Index 0 is the zero variable `z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VarId(pub u32);

impl VarId {
    pub const Z: VarId = VarId(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "z")
        } else {
            write!(f, "x{}", self.0)
        }
    }
}

/// Supply of fresh variables, handed out in increasing order.
#[derive(Clone, Debug)]
pub struct VarSupply {
    next: u32,
}

impl VarSupply {
    pub fn new() -> Self {
        VarSupply { next: 1 }
    }

    /// Continue after every variable used in `phi`.
    pub fn after(phi: &Mdl) -> Self {
        VarSupply { next: phi.max_var().0 + 1 }
    }

    pub fn fresh(&mut self) -> VarId {
        let v = VarId(self.next);
        self.next += 1;
        v
    }
}

impl Default for VarSupply {
    fn default() -> Self {
        Self::new()
    }
}
