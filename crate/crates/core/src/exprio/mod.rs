//! Text and JSON formats: the polynomial grammar, series documents and reports.

mod parse;
mod series_doc;
mod series_text;

pub use parse::{parse_poly, parse_poly_list, print_poly, ParseError, ParseErrorKind};
pub use series_doc::{
    dump_report, dump_series, load_series, parse_field, parse_order, read_report, DocError, RingDoc, SeriesDoc,
    TermDoc, UnitDoc,
};

pub use series_text::{infer_vars, parse_series_expr};

use crate::groebner::Ideal;

/// `(g1, g2, ..)` over the given generators; `(0)` for the zero ideal.
pub fn print_ideal(i: &Ideal) -> String {
    if i.is_zero() {
        "(0)".into()
    } else {
        i.to_string()
    }
}
