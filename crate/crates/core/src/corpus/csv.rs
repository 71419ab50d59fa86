//! Transactions CSV: one transaction per row, items sorted ascending and
//! joined by single commas, no quoting, LF after every row.

use std::collections::BTreeSet;
use std::path::Path;

use super::records::Transaction;
use crate::error::{Error, Result};
use crate::fsutil;

pub fn encode_transactions(tx: &[Transaction]) -> String {
    let mut out = String::new();
    for t in tx {
        let mut first = true;
        for item in t.items() {
            if !first {
                out.push(',');
            }
            out.push_str(item);
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Rows are numbered from 1 in errors.
pub fn decode_transactions(text: &str) -> Result<Vec<Transaction>> {
    let mut tx = Vec::new();
    for (idx, row) in text.split_terminator('\n').enumerate() {
        let row = row.strip_suffix('\r').unwrap_or(row);
        let mut items = BTreeSet::new();
        for item in row.split(',') {
            if item.is_empty() {
                return Err(Error::MalformedRow {
                    row: idx + 1,
                    message: "empty item".into(),
                });
            }
            if item.contains('\r') {
                return Err(Error::MalformedRow {
                    row: idx + 1,
                    message: "stray carriage return".into(),
                });
            }
            items.insert(item.to_owned());
        }
        tx.push(Transaction::from_normalized(items));
    }
    Ok(tx)
}

pub fn write_transactions_csv(tx: &[Transaction], path: impl AsRef<Path>) -> Result<()> {
    let text = encode_transactions(tx);
    fsutil::write_atomic(path.as_ref(), |out| out.write_all(text.as_bytes()))
}

pub fn read_transactions_csv(path: impl AsRef<Path>) -> Result<Vec<Transaction>> {
    let path = path.as_ref();
    let text = fsutil::read_string(path)?;
    decode_transactions(&text).map_err(|e| e.in_file(path))
}
