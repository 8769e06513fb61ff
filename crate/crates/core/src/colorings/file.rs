//! Text format for colorings.
//!
//! ```text
//! arrowlab-coloring v1
//! n=<count> arity=<k|unbounded> domain=<initial|explicit>
//! [vertices=<comma-separated ordinal expressions>]     (explicit domains only)
//! <dense rows, or a single family line>
//! ```
//!
//! A dense coloring has one row per domain element from the second on; the
//! row of `β` lists `c(α, β)` for the `α < β` in domain order, pair colors
//! written as their pairing index. A generated coloring has the single line
//! `family=<ek|varrho|delta|random> params=<key:value,...>`. The file ends with
//! a newline.

use thiserror::Error;

use super::{
    delta_coloring, ek_coloring, random_coloring, varrho_coloring, Arity, ColorValue, Coloring,
    Family, Source,
};
use crate::ordinal::{parse_ordinal, OrdinalDomain};

pub const MAGIC: &str = "arrowlab-coloring v1";

#[derive(Debug, Error)]
pub enum FileError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: expected {expected} colors, found {found}")]
    SizeMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: color {color} out of range for arity {arity}")]
    ColorOutOfRange { line: usize, color: u64, arity: u64 },
    #[error("missing trailing newline")]
    MissingTrailingNewline,
    #[error("cannot save: {0}")]
    NotSavable(String),
}

fn malformed(line: usize, message: impl Into<String>) -> FileError {
    FileError::Malformed {
        line,
        message: message.into(),
    }
}

pub fn save_coloring(c: &Coloring) -> Result<String, FileError> {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    let domain_kind = if c.domain().is_initial() {
        "initial"
    } else {
        "explicit"
    };
    out.push_str(&format!(
        "n={} arity={} domain={}\n",
        c.len(),
        c.arity(),
        domain_kind
    ));
    if let OrdinalDomain::ExplicitSet(v) = c.domain() {
        let list: Vec<String> = v.iter().map(ToString::to_string).collect();
        out.push_str(&format!("vertices={}\n", list.join(",")));
    }
    match c.source() {
        Source::Dense(values) => {
            if c.arity() == Arity::Unbounded {
                return Err(FileError::NotSavable(
                    "dense coloring with unbounded arity".into(),
                ));
            }
            let mut offset = 0;
            for j in 1..c.len() {
                let row: Vec<String> = values[offset..offset + j]
                    .iter()
                    .map(|v| v.index().to_string())
                    .collect();
                offset += j;
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        Source::Generated(family) => {
            let params = match family {
                Family::Ek | Family::Varrho => String::new(),
                Family::Delta { bits } => format!("bits:{bits}"),
                Family::Random { seed, arity } => format!("seed:{seed},arity:{arity}"),
            };
            out.push_str(&format!("family={} params={}\n", family.name(), params));
        }
    }
    Ok(out)
}

pub fn load_coloring(text: &str) -> Result<Coloring, FileError> {
    if !text.ends_with('\n') {
        return Err(FileError::MissingTrailingNewline);
    }
    let mut cur = Cursor {
        lines: text[..text.len() - 1].split('\n').collect(),
        at: 0,
    };

    let (ln, magic) = cur.next("header")?;
    if magic != MAGIC {
        return Err(malformed(ln, format!("expected '{MAGIC}'")));
    }
    let (ln, header) = cur.next("size line")?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n_f, arity_f, domain_f] = fields.as_slice() else {
        return Err(malformed(
            ln,
            "expected 'n=<count> arity=<k|unbounded> domain=<initial|explicit>'",
        ));
    };
    let n: usize = n_f
        .strip_prefix("n=")
        .and_then(|v| v.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| malformed(ln, "invalid n"))?;
    let arity = match arity_f.strip_prefix("arity=") {
        Some("unbounded") => Arity::Unbounded,
        Some(k) => Arity::Finite(k.parse().map_err(|_| malformed(ln, "invalid arity"))?),
        None => return Err(malformed(ln, "missing arity")),
    };
    let domain = match domain_f.strip_prefix("domain=") {
        Some("initial") => OrdinalDomain::initial(n).map_err(|e| malformed(ln, e.to_string()))?,
        Some("explicit") => {
            let (ln, vline) = cur.next("vertices line")?;
            let list = vline
                .strip_prefix("vertices=")
                .ok_or_else(|| malformed(ln, "expected 'vertices='"))?;
            let elements = list
                .split(',')
                .map(parse_ordinal)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| malformed(ln, e.to_string()))?;
            if elements.len() != n {
                return Err(FileError::SizeMismatch {
                    line: ln,
                    expected: n,
                    found: elements.len(),
                });
            }
            OrdinalDomain::explicit(elements).map_err(|e| malformed(ln, e.to_string()))?
        }
        _ => return Err(malformed(ln, "domain must be 'initial' or 'explicit'")),
    };

    let first_body = cur.lines.get(cur.at).copied().unwrap_or("");
    let coloring = if first_body.starts_with("family=") {
        let (ln, fline) = cur.next("family line")?;
        load_family(ln, fline, domain, arity)?
    } else {
        let Arity::Finite(k) = arity else {
            return Err(malformed(ln, "dense colorings need a finite arity"));
        };
        let mut values = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..n {
            let (ln, row) = match cur.next("matrix row") {
                Ok(r) => r,
                Err(_) => {
                    return Err(FileError::SizeMismatch {
                        line: cur.at + 1,
                        expected: j,
                        found: 0,
                    })
                }
            };
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != j || row.is_empty() {
                return Err(FileError::SizeMismatch {
                    line: ln,
                    expected: j,
                    found: if row.is_empty() { 0 } else { cells.len() },
                });
            }
            for cell in cells {
                let color: u64 = cell
                    .trim()
                    .parse()
                    .map_err(|_| malformed(ln, format!("invalid color '{cell}'")))?;
                if color >= k {
                    return Err(FileError::ColorOutOfRange {
                        line: ln,
                        color,
                        arity: k,
                    });
                }
                values.push(ColorValue::Scalar(color));
            }
        }
        Coloring::dense(domain, k, values).map_err(|e| malformed(ln, e.to_string()))?
    };
    if cur.at < cur.lines.len() {
        return Err(malformed(cur.at + 1, "unexpected trailing content"));
    }
    Ok(coloring)
}

struct Cursor<'a> {
    lines: Vec<&'a str>,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str), FileError> {
        let line = self.at + 1;
        let l = self
            .lines
            .get(self.at)
            .ok_or_else(|| malformed(line, format!("missing {what}")))?;
        self.at += 1;
        Ok((line, l.strip_suffix('\r').unwrap_or(l)))
    }
}

fn load_family(
    ln: usize,
    line: &str,
    domain: OrdinalDomain,
    arity: Arity,
) -> Result<Coloring, FileError> {
    let mut parts = line.split(' ');
    let name = parts
        .next()
        .and_then(|p| p.strip_prefix("family="))
        .ok_or_else(|| malformed(ln, "expected 'family='"))?;
    let params = parts
        .next()
        .and_then(|p| p.strip_prefix("params="))
        .ok_or_else(|| malformed(ln, "expected 'params='"))?;
    if parts.next().is_some() {
        return Err(malformed(ln, "unexpected content after params"));
    }
    let mut kv = std::collections::BTreeMap::new();
    for item in params.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once(':')
            .ok_or_else(|| malformed(ln, format!("bad parameter '{item}'")))?;
        let v: u64 = v
            .parse()
            .map_err(|_| malformed(ln, format!("bad parameter value '{item}'")))?;
        kv.insert(k, v);
    }
    let param = |key: &str| {
        kv.get(key)
            .copied()
            .ok_or_else(|| malformed(ln, format!("missing parameter '{key}'")))
    };
    let mismatch =
        |what: &str| malformed(ln, format!("{what} does not match the family parameters"));
    let c = match name {
        "ek" | "varrho" => {
            if arity != Arity::Unbounded {
                return Err(mismatch("arity"));
            }
            if name == "ek" {
                ek_coloring(domain)
            } else {
                varrho_coloring(domain)
            }
        }
        "delta" => {
            let bits =
                u32::try_from(param("bits")?).map_err(|_| malformed(ln, "bits too large"))?;
            let c = delta_coloring(bits).map_err(|e| malformed(ln, e.to_string()))?;
            if c.domain() != &domain {
                return Err(mismatch("domain"));
            }
            if c.arity() != arity {
                return Err(mismatch("arity"));
            }
            c
        }
        "random" => {
            let a = param("arity")?;
            if arity != Arity::Finite(a) {
                return Err(mismatch("arity"));
            }
            if !domain.is_initial() {
                return Err(mismatch("domain"));
            }
            random_coloring(domain.len(), a, param("seed")?)
                .map_err(|e| malformed(ln, e.to_string()))?
        }
        other => return Err(malformed(ln, format!("unknown family '{other}'"))),
    };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;

    const PENTAGON: &str =
        "arrowlab-coloring v1\nn=5 arity=2 domain=initial\n0\n1,0\n1,1,0\n0,1,1,0\n";

    fn pentagon() -> Coloring {
        Coloring::from_fn(5, 2, |i, j| u64::from(!(j - i == 1 || j - i == 4))).unwrap()
    }

    #[test]
    fn pentagon_golden_text() {
        assert_eq!(save_coloring(&pentagon()).unwrap(), PENTAGON);
        assert_eq!(load_coloring(PENTAGON).unwrap(), pentagon());
    }

    #[test]
    fn truncated_matrix_is_a_size_mismatch() {
        let text = "arrowlab-coloring v1\nn=5 arity=2 domain=initial\n0\n1,0\n1,1,0\n";
        assert!(matches!(
            load_coloring(text),
            Err(FileError::SizeMismatch { line: 6, .. })
        ));
        let text = "arrowlab-coloring v1\nn=5 arity=2 domain=initial\n0\n1,0\n1,1\n0,1,1,0\n";
        assert!(matches!(
            load_coloring(text),
            Err(FileError::SizeMismatch {
                line: 5,
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn format_errors() {
        assert!(matches!(
            load_coloring("arrowlab-coloring v1"),
            Err(FileError::MissingTrailingNewline)
        ));
        assert!(matches!(
            load_coloring("bogus\n"),
            Err(FileError::Malformed { line: 1, .. })
        ));
        let text = "arrowlab-coloring v1\nn=2 arity=2 domain=initial\n2\n";
        assert!(matches!(
            load_coloring(text),
            Err(FileError::ColorOutOfRange { color: 2, .. })
        ));
        let text = "arrowlab-coloring v1\nn=2 arity=2\n0\n";
        assert!(matches!(
            load_coloring(text),
            Err(FileError::Malformed { line: 2, .. })
        ));
        let text = "arrowlab-coloring v1\nn=2 arity=2 domain=initial\n0\n0\n";
        assert!(matches!(
            load_coloring(text),
            Err(FileError::Malformed { line: 4, .. })
        ));
        let text = "arrowlab-coloring v1\nn=4 arity=2 domain=initial\nfamily=random params=seed:1,arity:3\n";
        assert!(load_coloring(text).is_err());
    }

    #[test]
    fn generated_families_store_parameters() {
        let d = OrdinalDomain::explicit(vec![
            Ordinal::from_nat(3),
            Ordinal::omega(),
            "w*2+1".parse().unwrap(),
        ])
        .unwrap();
        let ek = ek_coloring(d);
        let text = save_coloring(&ek).unwrap();
        assert_eq!(
            text,
            "arrowlab-coloring v1\nn=3 arity=unbounded domain=explicit\nvertices=3,w,w*2+1\nfamily=ek params=\n"
        );
        let back = load_coloring(&text).unwrap();
        assert_eq!(back.table(), ek.table());

        let r = random_coloring(5, 2, 1).unwrap();
        let text = save_coloring(&r).unwrap();
        assert!(text.ends_with("family=random params=seed:1,arity:2\n"));
        assert_eq!(load_coloring(&text).unwrap().table(), r.table());

        let dl = delta_coloring(3).unwrap();
        assert_eq!(
            load_coloring(&save_coloring(&dl).unwrap()).unwrap().table(),
            dl.table()
        );
    }

    #[test]
    fn singleton_domain_has_no_rows() {
        let c = Coloring::from_fn(1, 2, |_, _| 0).unwrap();
        let text = save_coloring(&c).unwrap();
        assert_eq!(text, "arrowlab-coloring v1\nn=1 arity=2 domain=initial\n");
        assert_eq!(load_coloring(&text).unwrap(), c);
    }
}
