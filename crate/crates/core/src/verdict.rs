//! Verification results with counterexample witnesses.

use std::fmt;

use crate::linalg::{vector, Scalar};

/// Number of failing witnesses retained in a [`Verdict`].
pub const MAX_WITNESSES: usize = 16;

/// The identity a witness refers to. `Display` renders the identity itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `x·y − y·x = [x,y] − {x,y}`
    Skew,
    /// `[x,y]·z = x·(y·z) − y·(x·z)`
    Representation,
    /// `x·{y,z} = {x·y,z} + {y,x·z}`
    Derivation,
    /// `x·y = y·x`
    Commutativity,
    /// `L(x) − R(x) = ad(x) − Ad(x)`
    OpSkew,
    /// `L([x,y]) = [L(x),L(y)]`
    OpRepresentation,
    /// `[L(x),Ad(y)] = Ad(L(x)y)`
    OpDerivation,
    /// `[L(x),Ad(y)] + [Ad(x),L(y)] = Ad([x,y]) − Ad({x,y})`
    LeftAdCross,
    /// `[R(x),ad(y)] + [ad(x),R(y)] = [L(x),ad(y)] + [ad(x),L(y)] + [Ad(x),ad(y)] + [ad(x),Ad(y)] − 2[ad(x),ad(y)]`
    RightAdCross,
    /// `[L(x)+R(x), ad(y)] = ad(x·y + y·x)`
    SymAd,
    /// `[L(x)+R(x), ad(y)] = [L(y)+R(y), ad(x)]`
    SymAdSwap,
    /// `2[L(x),ad(y)] + 2[ad(x),L(y)] = [ad(y),Ad(x)] + [Ad(y),ad(x)]`
    LeftAdMixed,
    /// `x·[y,z] + [y,z]·x = [y,x·z] + [y,z·x] − [z,x·y] − [z,y·x]`
    SymAdElement,
    /// `L([y,z]) + R([y,z]) = ad(y)(L(z)+R(z)) − ad(z)(L(y)+R(y))`
    SymAdOperator,
    /// `[ad(x),Ad(y)] = Ad([x,y])`
    AdAd,
    /// `L({x,y}) − L([x,y]) = ½(ad({x,y}) + [ad(y),L(x)] + [L(y),ad(x)])`
    LeftBracketDefect,
    /// `[L(x), ad(y)] = ad(L(x)y)`: every `L(x)` is a derivation of `g`
    LeftDerivationOfG,
    /// `x·{p,q} = 0` whenever `{x,p} = {x,q} = 0`
    CentralizerKillsBracket,
    /// `z·x = x·z = 0` for `z` central in `n`
    CenterAnnihilates,
    /// `x·{y,z} = 0`
    LeftKillsDerivedN,
    /// `[x,y]·z = −z·[x,y]`
    DerivedAnticommutes,
    /// `[x,y·z] + [x,z·y] = [y,x·z] + [y,z·x]`
    BracketSymmetric,
    /// `L([x,y]) + R([x,y]) = 0`
    DerivedLeftRightSum,
    /// `[n_a, n_b] ⊆ n_(a+b)` for a grading
    GradingCompatible,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Identity::*;
        let s = match self {
            Skew => "x·y − y·x = [x,y] − {x,y}",
            Representation => "[x,y]·z = x·(y·z) − y·(x·z)",
            Derivation => "x·{y,z} = {x·y,z} + {y,x·z}",
            Commutativity => "x·y = y·x",
            OpSkew => "L(x) − R(x) = ad(x) − Ad(x)",
            OpRepresentation => "L([x,y]) = [L(x),L(y)]",
            OpDerivation => "[L(x),Ad(y)] = Ad(L(x)y)",
            LeftAdCross => "[L(x),Ad(y)] + [Ad(x),L(y)] = Ad([x,y]) − Ad({x,y})",
            RightAdCross => {
                "[R(x),ad(y)] + [ad(x),R(y)] = [L(x),ad(y)] + [ad(x),L(y)] + [Ad(x),ad(y)] + [ad(x),Ad(y)] − 2[ad(x),ad(y)]"
            }
            SymAd => "[L(x)+R(x), ad(y)] = ad(x·y + y·x)",
            SymAdSwap => "[L(x)+R(x), ad(y)] = [L(y)+R(y), ad(x)]",
            LeftAdMixed => "2[L(x),ad(y)] + 2[ad(x),L(y)] = [ad(y),Ad(x)] + [Ad(y),ad(x)]",
            SymAdElement => "x·[y,z] + [y,z]·x = [y,x·z] + [y,z·x] − [z,x·y] − [z,y·x]",
            SymAdOperator => "L([y,z]) + R([y,z]) = ad(y)(L(z)+R(z)) − ad(z)(L(y)+R(y))",
            AdAd => "[ad(x),Ad(y)] = Ad([x,y])",
            LeftBracketDefect => "L({x,y}) − L([x,y]) = ½(ad({x,y}) + [ad(y),L(x)] + [L(y),ad(x)])",
            LeftDerivationOfG => "[L(x),ad(y)] = ad(L(x)y)",
            CentralizerKillsBracket => "x·{p,q} = 0 when {x,p} = {x,q} = 0",
            CenterAnnihilates => "Z(n)·n = n·Z(n) = 0",
            LeftKillsDerivedN => "x·{y,z} = 0",
            DerivedAnticommutes => "[x,y]·z = −z·[x,y]",
            BracketSymmetric => "[x,y·z] + [x,z·y] = [y,x·z] + [y,z·x]",
            DerivedLeftRightSum => "L([x,y]) + R([x,y]) = 0",
            GradingCompatible => "[n_a, n_b] ⊆ n_(a+b)",
        };
        f.write_str(s)
    }
}

/// One failing instance of an identity: the basis indices it was evaluated
/// on and both sides as written. For operator identities the last index is
/// the basis vector the operators were applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub identity: Identity,
    /// 0-based basis indices.
    pub indices: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl Witness {
    /// `rhs − lhs`
    pub fn residual(&self) -> Vec<Scalar> {
        vector::sub(&self.rhs, &self.lhs)
    }

    /// Indices as `(e3,e1,e3)`.
    pub fn tuple(&self) -> String {
        let parts: Vec<String> = self.indices.iter().map(|i| format!("e{}", i + 1)).collect();
        format!("({})", parts.join(","))
    }

    pub fn is_at(&self, one_based: &[usize]) -> bool {
        self.indices.len() == one_based.len() && self.indices.iter().zip(one_based).all(|(a, b)| a + 1 == *b)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: residual {} (lhs {}, rhs {})",
            self.tuple(),
            vector::format_basis(&self.residual()),
            vector::format_basis(&self.lhs),
            vector::format_basis(&self.rhs)
        )
    }
}

/// Outcome of checking one or more identities over all basis tuples.
/// Keeps the first [`MAX_WITNESSES`] failures in the order they were found
/// and the total failure count.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    witnesses: Vec<Witness>,
    failures: usize,
}

impl Verdict {
    pub fn ok() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.failures == 0
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    /// Failing identities, in first-seen order without repeats.
    pub fn failed_identities(&self) -> Vec<Identity> {
        let mut ids = Vec::new();
        for w in &self.witnesses {
            if !ids.contains(&w.identity) {
                ids.push(w.identity);
            }
        }
        ids
    }

    pub fn fails(&self, identity: Identity) -> bool {
        self.witnesses.iter().any(|w| w.identity == identity)
    }

    /// Records a comparison; only mismatches are stored.
    pub fn compare(&mut self, identity: Identity, indices: &[usize], lhs: Vec<Scalar>, rhs: Vec<Scalar>) {
        if lhs == rhs {
            return;
        }
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness {
                identity,
                indices: indices.to_vec(),
                lhs,
                rhs,
            });
        }
    }

    /// Compares two operators column by column, recording failures at
    /// `indices` extended by the column index.
    pub fn compare_operators(
        &mut self,
        identity: Identity,
        indices: &[usize],
        lhs: &crate::Matrix,
        rhs: &crate::Matrix,
    ) {
        if lhs == rhs {
            return;
        }
        for c in 0..lhs.cols() {
            let mut idx = indices.to_vec();
            idx.push(c);
            self.compare(identity, &idx, lhs.column(c), rhs.column(c));
        }
    }

    pub fn merge(&mut self, other: Verdict) {
        self.failures += other.failures;
        for w in other.witnesses {
            if self.witnesses.len() >= MAX_WITNESSES {
                break;
            }
            self.witnesses.push(w);
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        writeln!(f, "FAILED ({} failing instances)", self.failures)?;
        let mut last = None;
        for w in &self.witnesses {
            if last != Some(w.identity) {
                writeln!(f, "  identity {}", w.identity)?;
                last = Some(w.identity);
            }
            writeln!(f, "    {w}")?;
        }
        Ok(())
    }
}
