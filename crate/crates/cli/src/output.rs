//! CSV emission and the order-preserving parallel sweep helper.
//!
//! Numbers carry 12 significant digits with '.' as the decimal separator;
//! rows end in LF.

use std::io::Write;

use crate::CliError;

/// One value formatted to 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    format!("{x:.11e}")
}

/// A CSV table with a fixed header; cells may be empty (gaps).
pub struct Csv {
    lines: Vec<String>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self { lines: vec![header.join(",")] }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.lines.push(cells.join(","));
    }

    pub fn to_text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

/// Writes `text` to the path, or to stdout when no path was given.
pub fn emit(text: &str, out: Option<&str>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::schema(format!("cannot write {path}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::schema(format!("stdout: {e}")))
        }
    }
}

/// Evaluates `f` over `0..n` on scoped worker threads, preserving index
/// order in the returned vector.
pub fn par_map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync,
{
    let workers = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1).min(8);
    if workers <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    let mut slots: Vec<Option<R>> = (0..n).map(|_| None).collect();
    let chunk = n.div_ceil(workers);
    std::thread::scope(|scope| {
        for (w, slice) in slots.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                for (i, slot) in slice.iter_mut().enumerate() {
                    *slot = Some(f(w * chunk + i));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("all slots filled")).collect()
}
