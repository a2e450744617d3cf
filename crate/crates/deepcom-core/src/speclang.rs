//! A tiny textual language naming groups on the command line.
//!
//! ```text
//! spec   := atom ("x" atom)*
//! atom   := family | "table:" path | "sg64_182"
//! family := ("C" | "D" | "Q" | "SD" | "S" | "A") digits
//! ```
//!
//! Whitespace around atoms and separators is ignored. A `table:` path runs
//! to the next whitespace character, so a product involving one needs spaced
//! separators: `C2 x table:v4.json`. Family parameters follow the usual
//! naming (order for C/D/Q/SD, degree for S/A) and are validated at parse
//! time; how a table path is resolved is up to the caller of [`realize`].
//! The literal `sg64_182` names the built-in order-64 group from
//! [`crate::group::sg64_182`].

use crate::error::{Error, Result};
use crate::group::{direct_product, family_order, make_family, sg64_182, FamilyKind, Group};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

/// A parsed group description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// A built-in family member, e.g. `D8` or `S4`.
    Family(FamilyKind, usize),
    /// A Cayley table to be loaded from a file.
    TableFile(String),
    /// A built-in group named by a literal; only `sg64_182` exists.
    Fixture(String),
    /// A direct product of at least two factors. Never nested: the parser
    /// always produces a flat factor list.
    Product(Vec<GroupSpec>),
}

pub fn parse_spec(input: &str) -> Result<GroupSpec> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    p.skip_ws();
    let mut factors = vec![p.atom()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'x') => {
                p.pos += 1;
                p.skip_ws();
                factors.push(p.atom()?);
            }
            Some(c) => {
                return Err(Error::Parse {
                    offset: p.pos,
                    message: format!("unexpected character {:?}", c as char),
                    expected: vec!["x".to_string(), "end of input".to_string()],
                });
            }
        }
    }
    Ok(if factors.len() == 1 {
        factors.pop().expect("one factor")
    } else {
        GroupSpec::Product(factors)
    })
}

/// Canonical text for a spec; [`parse_spec`] accepts it back unchanged.
pub fn print_spec(spec: &GroupSpec) -> String {
    match spec {
        GroupSpec::Family(kind, param) => format!("{}{param}", kind.letter()),
        GroupSpec::TableFile(path) => format!("table:{path}"),
        GroupSpec::Fixture(name) => name.clone(),
        GroupSpec::Product(factors) => {
            // a path atom would swallow a bare "x", so space the separators
            // whenever a table file is involved
            let sep = if factors
                .iter()
                .any(|f| matches!(f, GroupSpec::TableFile(_)))
            {
                " x "
            } else {
                "x"
            };
            let parts: Vec<String> = factors.iter().map(print_spec).collect();
            parts.join(sep)
        }
    }
}

/// Builds the group a spec describes. Table atoms are resolved through
/// `loader`, which maps a path to a group; every factor and every partial
/// product is held to `max_order`.
pub fn realize(
    spec: &GroupSpec,
    max_order: usize,
    loader: &mut dyn FnMut(&str) -> Result<Group>,
) -> Result<Group> {
    match spec {
        GroupSpec::Family(kind, param) => make_family(*kind, *param, max_order),
        GroupSpec::TableFile(path) => {
            let g = loader(path)?;
            if g.order() > max_order {
                return Err(Error::CapExceeded {
                    what: "group order",
                    limit: max_order,
                    requested: g.order(),
                });
            }
            Ok(g)
        }
        GroupSpec::Fixture(name) => {
            if name != "sg64_182" {
                return Err(Error::BadParameter(format!("unknown fixture group {name:?}")));
            }
            let g = sg64_182();
            if g.order() > max_order {
                return Err(Error::CapExceeded {
                    what: "group order",
                    limit: max_order,
                    requested: g.order(),
                });
            }
            Ok(g)
        }
        GroupSpec::Product(factors) => {
            let mut acc: Option<Group> = None;
            for factor in factors {
                let g = realize(factor, max_order, loader)?;
                acc = Some(match acc {
                    None => g,
                    Some(a) => {
                        let combined = a.order().saturating_mul(g.order());
                        if combined > max_order {
                            return Err(Error::CapExceeded {
                                what: "group order",
                                limit: max_order,
                                requested: combined,
                            });
                        }
                        direct_product(&a, &g)?
                    }
                });
            }
            Ok(acc.expect("parser guarantees at least one factor"))
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<GroupSpec> {
        const TABLE: &[u8] = b"table:";
        if self.src[self.pos..].starts_with(TABLE) {
            let start = self.pos + TABLE.len();
            let mut end = start;
            while matches!(self.src.get(end), Some(c) if !c.is_ascii_whitespace()) {
                end += 1;
            }
            if end == start {
                return Err(Error::Parse {
                    offset: start,
                    message: "empty table path".to_string(),
                    expected: vec!["a file path".to_string()],
                });
            }
            self.pos = end;
            let path = core::str::from_utf8(&self.src[start..end])
                .map_err(|_| Error::Parse {
                    offset: start,
                    message: "table path is not valid UTF-8".to_string(),
                    expected: vec!["a file path".to_string()],
                })?
                .to_string();
            return Ok(GroupSpec::TableFile(path));
        }
        const FIXTURE: &[u8] = b"sg64_182";
        if self.src[self.pos..].starts_with(FIXTURE) {
            self.pos += FIXTURE.len();
            return Ok(GroupSpec::Fixture("sg64_182".to_string()));
        }
        // two-letter prefix first: SD16 must not parse as S followed by junk
        let kind = if self.src[self.pos..].starts_with(b"SD") {
            self.pos += 2;
            FamilyKind::Semidihedral
        } else {
            let kind = match self.peek() {
                Some(b'C') => FamilyKind::Cyclic,
                Some(b'D') => FamilyKind::Dihedral,
                Some(b'Q') => FamilyKind::Quaternion,
                Some(b'S') => FamilyKind::Symmetric,
                Some(b'A') => FamilyKind::Alternating,
                _ => {
                    return Err(Error::Parse {
                        offset: self.pos,
                        message: "expected a group atom".to_string(),
                        expected: vec![
                            "C<n>".to_string(),
                            "D<n>".to_string(),
                            "Q<n>".to_string(),
                            "SD<n>".to_string(),
                            "S<n>".to_string(),
                            "A<n>".to_string(),
                            "table:<path>".to_string(),
                            "sg64_182".to_string(),
                        ],
                    });
                }
            };
            self.pos += 1;
            kind
        };
        let dstart = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if dstart == self.pos {
            return Err(Error::Parse {
                offset: self.pos,
                message: format!("{} needs a numeric parameter", kind.letter()),
                expected: vec!["digits".to_string()],
            });
        }
        let digits = core::str::from_utf8(&self.src[dstart..self.pos]).expect("ascii digits");
        let param: usize = digits.parse().map_err(|_| Error::Parse {
            offset: dstart,
            message: "parameter out of range".to_string(),
            expected: vec!["a smaller number".to_string()],
        })?;
        family_order(kind, param)?;
        Ok(GroupSpec::Family(kind, param))
    }
}
