//! JSON-lines persistence for [`KlTable`].
//!
//! Line 1 is the header `{"format":"klcache","version":1,"n":n}`. Every
//! further line is `{"y":[..],"x":[..],"h":{..}}` for one pair `y <= x`,
//! sorted by `x` and then `y`, each in the order (length, lexicographic).

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use super::kl::{Column, KlTable};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::symgroup::{Permutation, SymGroup};

pub const FORMAT: &str = "klcache";
pub const VERSION: u32 = 1;
/// Fraction of columns recomputed on load.
pub const REVALIDATE_FRACTION: f64 = 0.05;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    version: u32,
    n: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    y: Permutation,
    x: Permutation,
    h: LaurentPoly,
}

/// Default cache file name for `S_n` inside a cache directory.
pub fn cache_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("klcache-{n}.jsonl"))
}

pub fn write_cache(table: &KlTable, out: impl Write) -> Result<()> {
    let mut out = BufWriter::new(out);
    let header = Header {
        format: FORMAT.to_string(),
        version: VERSION,
        n: table.n(),
    };
    serde_json::to_writer(&mut out, &header)?;
    out.write_all(b"\n")?;
    let g = table.group().clone();
    for x in 0..g.order() {
        for (y, h) in table.column(x) {
            let rec = Record {
                y: g.element(y).clone(),
                x: g.element(x).clone(),
                h,
            };
            serde_json::to_writer(&mut out, &rec)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn save(table: &KlTable, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("jsonl.tmp");
    write_cache(table, File::create(&tmp)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Loads a cache file, recomputing a random 5% of the columns.
pub fn load(path: &Path, n: usize) -> Result<KlTable> {
    let file = File::open(path)?;
    read_cache(
        BufReader::new(file),
        n,
        REVALIDATE_FRACTION,
        &mut StdRng::from_entropy(),
    )
}

/// Loads the table for `S_n` from `dir`, computing and saving it when absent.
pub fn load_or_compute(dir: &Path, n: usize) -> Result<KlTable> {
    let path = cache_file(dir, n);
    if path.exists() {
        return load(&path, n);
    }
    let table = KlTable::compute(n);
    save(&table, &path)?;
    Ok(table)
}

fn corrupt(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::CacheCorrupt(format!("line {line}: {msg}"))
}

/// Parses and validates a cache stream.
///
/// Every record is checked structurally (ordering, Bruhat support, degree
/// bounds); in addition `fraction` of the columns, chosen with `rng`, are
/// recomputed from the stored shorter columns and compared exactly.
pub fn read_cache(
    input: impl BufRead,
    n: usize,
    fraction: f64,
    rng: &mut impl Rng,
) -> Result<KlTable> {
    let mut lines = input.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| corrupt(1, "missing header"))?
        .map_err(|e| corrupt(1, e))?;
    let header: Header = serde_json::from_str(&header_line).map_err(|e| corrupt(1, e))?;
    if header.format != FORMAT || header.version != VERSION {
        return Err(corrupt(
            1,
            format!("unsupported format {} v{}", header.format, header.version),
        ));
    }
    if header.n != n {
        return Err(corrupt(
            1,
            format!("cache is for S_{}, expected S_{n}", header.n),
        ));
    }
    if n == 0 || n > 8 {
        return Err(corrupt(1, format!("unsupported n = {n}")));
    }
    let group = Arc::new(SymGroup::new(n));
    let mut columns: Vec<Column> = vec![Vec::new(); group.order()];
    let mut has_diag = vec![false; group.order()];
    let mut last: Option<(usize, usize)> = None;
    for (k, line) in lines.enumerate() {
        let lineno = k + 2;
        let line = line.map_err(|e| corrupt(lineno, e))?;
        if line.trim().is_empty() {
            return Err(corrupt(lineno, "blank line"));
        }
        let rec: Record = serde_json::from_str(&line).map_err(|e| corrupt(lineno, e))?;
        let (Some(y), Some(x)) = (group.index_of(&rec.y), group.index_of(&rec.x)) else {
            return Err(corrupt(lineno, format!("permutation outside S_{n}")));
        };
        if last.is_some_and(|prev| prev >= (x, y)) {
            return Err(corrupt(lineno, "records out of order"));
        }
        last = Some((x, y));
        if y == x {
            if !rec.h.is_one() {
                return Err(corrupt(lineno, "diagonal entry is not 1"));
            }
            has_diag[x] = true;
            continue;
        }
        if rec.h.is_zero() || !rec.h.degrees_at_least(1) {
            return Err(corrupt(lineno, "off-diagonal entry not in vZ[v]"));
        }
        if !rec.y.bruhat_leq(&rec.x)? {
            return Err(corrupt(lineno, format!("{} is not below {}", rec.y, rec.x)));
        }
        columns[x].push((y as u32, rec.h));
    }
    if let Some(x) = has_diag.iter().position(|d| !d) {
        return Err(Error::CacheCorrupt(format!(
            "missing diagonal record for {}",
            group.element(x)
        )));
    }
    let table = KlTable::from_columns(group.clone(), columns);
    let count = ((group.order() as f64 * fraction).ceil() as usize).clamp(1, group.order());
    for x in sample(rng, group.order(), count) {
        if table.recompute_column(x) != *table.raw_column(x) {
            return Err(Error::CacheCorrupt(format!(
                "column of {} fails recomputation",
                group.element(x)
            )));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn serialize(table: &KlTable) -> String {
        let mut buf = Vec::new();
        write_cache(table, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    fn read(text: &str, n: usize, fraction: f64) -> Result<KlTable> {
        read_cache(text.as_bytes(), n, fraction, &mut StdRng::seed_from_u64(7))
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let t = KlTable::compute(4);
        let text = serialize(&t);
        assert!(text.starts_with("{\"format\":\"klcache\",\"version\":1,\"n\":4}\n"));
        let back = read(&text, 4, 1.0).unwrap();
        assert_eq!(serialize(&back), text);
        for x in 0..24 {
            for y in 0..24 {
                assert_eq!(back.h_idx(y, x), t.h_idx(y, x));
            }
        }
    }

    #[test]
    fn rejects_tampering() {
        let text = serialize(&KlTable::compute(4));
        let lines: Vec<&str> = text.lines().collect();
        // change one polynomial deep in the table
        let target = lines
            .iter()
            .rposition(|l| l.contains("\"coeffs\":[1,0,1]"))
            .unwrap();
        let mut bad = lines.clone();
        let replaced = lines[target].replace("\"coeffs\":[1,0,1]", "\"coeffs\":[1,0,2]");
        bad[target] = &replaced;
        let bad_text = bad.join("\n") + "\n";
        assert!(matches!(
            read(&bad_text, 4, 1.0),
            Err(Error::CacheCorrupt(_))
        ));

        let mut swapped = lines.clone();
        swapped.swap(3, 4);
        assert!(matches!(
            read(&(swapped.join("\n") + "\n"), 4, 0.0),
            Err(Error::CacheCorrupt(_))
        ));

        let truncated = lines[..lines.len() - 1].join("\n") + "\n";
        assert!(matches!(
            read(&truncated, 4, 0.0),
            Err(Error::CacheCorrupt(_))
        ));

        assert!(matches!(read(&text, 3, 0.0), Err(Error::CacheCorrupt(_))));
        assert!(matches!(read("", 3, 0.0), Err(Error::CacheCorrupt(_))));
        assert!(matches!(
            read("{\"format\":\"x\"}\n", 3, 0.0),
            Err(Error::CacheCorrupt(_))
        ));
    }

    #[test]
    fn load_or_compute_uses_directory() {
        let dir = tempfile::tempdir().unwrap();
        let a = load_or_compute(dir.path(), 4).unwrap();
        assert!(cache_file(dir.path(), 4).exists());
        let b = load_or_compute(dir.path(), 4).unwrap();
        assert_eq!(serialize(&a), serialize(&b));
    }
}
