//! On-disk formats: group specs (JSON), signals (binary `C2D1` or CSV) and
//! machine-readable reports.

mod report;
mod signal_file;
mod spec_file;

pub use report::{Report, ReportValue};
pub use signal_file::{
    read_signal, signal_from_bytes, signal_from_csv, signal_to_bytes, signal_to_csv, write_signal,
    HEADER_LEN, MAGIC, VERSION,
};
pub use spec_file::{group_spec_from_str, group_spec_to_string, parse_group_spec, write_group_spec};
