use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::GridSignal;

pub const MAGIC: [u8; 4] = *b"C2D1";
pub const VERSION: u16 = 1;
/// Magic, version, `N` and `L`.
pub const HEADER_LEN: usize = 4 + 2 + 4 + 8;

/// Binary layout: magic, `u16` version, `u32 N`, `f64 L`, then `N²`
/// interleaved `(re, im)` `f64` pairs, row-major, all little-endian.
pub fn signal_to_bytes(f: &GridSignal) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 16 * f.data().len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(f.n() as u32).to_le_bytes());
    out.extend_from_slice(&f.extent().to_le_bytes());
    for z in f.data() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn signal_from_bytes(bytes: &[u8]) -> Result<GridSignal> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Truncated {
            expected: HEADER_LEN,
            found: bytes.len(),
        });
    }
    let magic: [u8; 4] = bytes[0..4].try_into().unwrap();
    if magic != MAGIC {
        return Err(Error::BadMagic(magic));
    }
    let version = u16::from_le_bytes(bytes[4..6].try_into().unwrap());
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let n = u32::from_le_bytes(bytes[6..10].try_into().unwrap()) as usize;
    let extent = f64::from_le_bytes(bytes[10..18].try_into().unwrap());
    let expected = n
        .checked_mul(n)
        .and_then(|nn| nn.checked_mul(16))
        .and_then(|b| b.checked_add(HEADER_LEN))
        .ok_or_else(|| Error::InvalidSignal(format!("grid size {n} too large")))?;
    if bytes.len() < expected {
        return Err(Error::Truncated {
            expected,
            found: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(Error::Malformed(format!(
            "{} trailing bytes after payload",
            bytes.len() - expected
        )));
    }
    let f = |k: usize| f64::from_le_bytes(bytes[k..k + 8].try_into().unwrap());
    let data = (0..n * n)
        .map(|k| {
            let off = HEADER_LEN + 16 * k;
            Complex64::new(f(off), f(off + 8))
        })
        .collect();
    GridSignal::new(n, extent, data)
}

/// CSV layout: a `# L=<extent>` line, then `N` rows of `N` cells, each
/// cell written as two fields `re,im`.
pub fn signal_to_csv(f: &GridSignal) -> String {
    let n = f.n();
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in f.data().chunks(n) {
        let fields: Vec<String> = row
            .iter()
            .flat_map(|z| [z.re.to_string(), z.im.to_string()])
            .collect();
        w.write_record(&fields).expect("in-memory csv write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8");
    format!("# L={}\n{body}", f.extent())
}

pub fn signal_from_csv(text: &str) -> Result<GridSignal> {
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let extent: f64 = first
        .trim_end_matches('\r')
        .strip_prefix("# L=")
        .ok_or_else(|| Error::Csv {
            row: 1,
            col: 1,
            msg: "expected header `# L=<extent>`".into(),
        })?
        .trim()
        .parse()
        .map_err(|e| Error::Csv {
            row: 1,
            col: 1,
            msg: format!("extent: {e}"),
        })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(rest.as_bytes());
    let mut data = Vec::new();
    let mut width = None;
    let mut rows = 0;
    for (r, record) in reader.records().enumerate() {
        let row = r + 2;
        let record = record.map_err(|e| Error::Csv {
            row,
            col: 1,
            msg: e.to_string(),
        })?;
        if record.len() % 2 != 0 {
            return Err(Error::Csv {
                row,
                col: record.len(),
                msg: "odd field count; cells are `re,im` pairs".into(),
            });
        }
        let cells = record.len() / 2;
        if *width.get_or_insert(cells) != cells {
            return Err(Error::Csv {
                row,
                col: 2 * cells.min(width.unwrap()) + 1,
                msg: format!("{cells} cells, expected {}", width.unwrap()),
            });
        }
        let mut vals = Vec::with_capacity(record.len());
        for (c, field) in record.iter().enumerate() {
            let v: f64 = field.trim().parse().map_err(|e| Error::Csv {
                row,
                col: c + 1,
                msg: format!("`{field}`: {e}"),
            })?;
            vals.push(v);
        }
        data.extend(vals.chunks(2).map(|p| Complex64::new(p[0], p[1])));
        rows += 1;
    }
    if width.is_some_and(|w| w != rows) {
        return Err(Error::DimensionMismatch(format!(
            "{rows} rows of {} cells; grid must be square",
            width.unwrap()
        )));
    }
    GridSignal::new(rows, extent, data)
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Reads a signal file; `.csv` paths use the CSV layout.
pub fn read_signal(path: impl AsRef<Path>) -> Result<GridSignal> {
    let path = path.as_ref();
    if is_csv(path) {
        signal_from_csv(&fs::read_to_string(path)?)
    } else {
        signal_from_bytes(&fs::read(path)?)
    }
}

pub fn write_signal(path: impl AsRef<Path>, f: &GridSignal) -> Result<()> {
    let path = path.as_ref();
    if is_csv(path) {
        fs::write(path, signal_to_csv(f))?;
    } else {
        fs::write(path, signal_to_bytes(f))?;
    }
    Ok(())
}
