//! Plain-text poset files and argument resolution.
//!
//! A poset file starts with `poset <n>` and lists one strict pair `i j`
//! (meaning `i < j`) per line. `#` starts a comment. Writers emit covers only.

use std::fs;
use std::path::Path;

use crate::construct;
use crate::expr::Expr;
use crate::order::Poset;
use crate::{Error, Result};

pub fn parse_poset_file(text: &str) -> Result<Poset> {
    let mut n = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (n, fields.as_slice()) {
            (None, ["poset", size]) => {
                n = Some(size.parse::<usize>().map_err(|_| Error::parse(line_no, "bad size"))?);
            }
            (None, _) => return Err(Error::parse(line_no, "expected header `poset <n>`")),
            (Some(_), [i, j]) => {
                let i = i.parse::<usize>().map_err(|_| Error::parse(line_no, "bad index"))?;
                let j = j.parse::<usize>().map_err(|_| Error::parse(line_no, "bad index"))?;
                pairs.push((i, j));
            }
            (Some(_), _) => return Err(Error::parse(line_no, "expected a pair `i j`")),
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, "missing header"))?;
    Poset::from_strict_pairs(n, &pairs)
}

pub fn format_poset_file(p: &Poset) -> String {
    let mut out = format!("poset {}\n", p.len());
    for (a, b) in p.covers() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

pub fn read_poset_file(path: &Path) -> Result<Poset> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    parse_poset_file(&text)
}

pub fn write_poset_file(path: &Path, p: &Poset) -> Result<()> {
    fs::write(path, format_poset_file(p))
        .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))
}

/// Resolves a command-line poset argument: `gen:<name>`, `expr:<text>`,
/// an existing file, or bare expression text.
pub fn resolve_poset(arg: &str) -> Result<Poset> {
    if let Some(name) = arg.strip_prefix("gen:") {
        construct::gen_named(name)
    } else if let Some(text) = arg.strip_prefix("expr:") {
        Expr::parse(text)?.eval()
    } else if Path::new(arg).is_file() {
        read_poset_file(Path::new(arg))
    } else {
        Expr::parse(arg)?.eval()
    }
}
