//! Named symbols with a process-wide interning registry.
//!
//! Naming scheme used throughout the crate:
//!
//! | name      | meaning                               |
//! |-----------|---------------------------------------|
//! | `l3`      | the pairing (λ, α₃)                   |
//! | `kap`     | the step κ                            |
//! | `z:2`     | the point z₂                          |
//! | `t:1:2`   | the integration variable t₁^{(2)}     |
//! | `L:2:1`   | the pairing (Λ₂, α₁) of a highest weight |
//!
//! Symbols compare by *name* (digit runs compared numerically), so every
//! canonical form and serialization is independent of the order in which
//! symbols were first interned.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::LazyLock;

use parking_lot::RwLock;

struct Registry {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

static REGISTRY: LazyLock<RwLock<Registry>> = LazyLock::new(|| {
    RwLock::new(Registry {
        names: Vec::new(),
        ids: HashMap::new(),
    })
});

/// An interned symbol. Cheap to copy; equality is identity of the name.
#[derive(Clone, Copy)]
pub struct Symbol {
    id: u32,
    name: &'static str,
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Symbol {}

impl std::hash::Hash for Symbol {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id.hash(state)
    }
}

impl Symbol {
    /// Interns `name`, returning the unique symbol carrying it.
    pub fn new(name: &str) -> Symbol {
        {
            let reg = REGISTRY.read();
            if let Some(&id) = reg.ids.get(name) {
                return Symbol {
                    id,
                    name: reg.names[id as usize],
                };
            }
        }
        let mut reg = REGISTRY.write();
        if let Some(&id) = reg.ids.get(name) {
            return Symbol {
                id,
                name: reg.names[id as usize],
            };
        }
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        let id = reg.names.len() as u32;
        reg.names.push(leaked);
        reg.ids.insert(leaked, id);
        Symbol { id, name: leaked }
    }

    /// The registry id (stable within a process).
    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// `l{k}`: the dynamical pairing (λ, α_k).
    pub fn lambda(k: usize) -> Symbol {
        Symbol::new(&format!("l{k}"))
    }

    /// `kap`: the step κ.
    pub fn kappa() -> Symbol {
        Symbol::new("kap")
    }

    /// `z:{j}`: the point z_j.
    pub fn z(j: usize) -> Symbol {
        Symbol::new(&format!("z:{j}"))
    }

    /// `t:{k}:{d}`: the d-th integration variable of color k.
    pub fn t(k: usize, d: usize) -> Symbol {
        Symbol::new(&format!("t:{k}:{d}"))
    }

    /// `L:{j}:{k}`: the pairing (Λ_j, α_k) of the j-th highest weight.
    pub fn hw(j: usize, k: usize) -> Symbol {
        Symbol::new(&format!("L:{j}:{k}"))
    }

    /// Parses a `t:{k}:{d}` name into `(k, d)`.
    pub fn as_t(&self) -> Option<(usize, usize)> {
        let rest = self.name.strip_prefix("t:")?;
        let (k, d) = rest.split_once(':')?;
        Some((k.parse().ok()?, d.parse().ok()?))
    }
}

/// Natural ordering of names: digit runs compare numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (ab, bb) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0, 0);
    while i < ab.len() && j < bb.len() {
        if ab[i].is_ascii_digit() && bb[j].is_ascii_digit() {
            let si = i;
            while i < ab.len() && ab[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < bb.len() && bb[j].is_ascii_digit() {
                j += 1;
            }
            let da = a[si..i].trim_start_matches('0');
            let db = b[sj..j].trim_start_matches('0');
            let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            let ord = ab[i].cmp(&bb[j]);
            if ord != Ordering::Equal {
                return ord;
            }
            i += 1;
            j += 1;
        }
    }
    (ab.len() - i).cmp(&(bb.len() - j)).then_with(|| a.cmp(b))
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.id == other.id {
            Ordering::Equal
        } else {
            natural_cmp(self.name, other.name)
        }
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}
