//! Report types and renderers shared by the `lrc` binary and its tests.

pub mod report;

pub use report::{
    build_code_report, CodeReport, DistanceReport, RepairDemoReport, SearchReport, TableReport,
    VerifyReport, SCHEMA_VERSION,
};
