//! Round-trip and rejection tests for the text file formats.

use lrc_cli::report::Doc;
use lrc_cli::textfmt::{
    field_header, parse_alphas, parse_code, parse_field_header, parse_matrix, render_alphas,
    render_code, render_matrix,
};
use lrc_core::code::LinearCode;
use lrc_core::gf::Field;
use lrc_core::matrix::GfMatrix;

fn hamming_code() -> LinearCode {
    let f = Field::new(2, 1).unwrap();
    let pcm = GfMatrix::from_rows(
        &f,
        &[
            vec![1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
    )
    .unwrap();
    LinearCode::from_pcm(pcm).unwrap()
}

#[test]
fn field_header_pins_the_canonical_moduli() {
    assert_eq!(field_header(&Field::new(2, 1).unwrap()), "q=2^1 mod=2");
    assert_eq!(field_header(&Field::new(5, 1).unwrap()), "q=5^1 mod=5");
    assert_eq!(field_header(&Field::new(2, 4).unwrap()), "q=2^4 mod=19");
}

#[test]
fn field_header_round_trips_across_field_shapes() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 23, 25, 27, 81, 512] {
        let f = Field::of_order(q).unwrap();
        let header = field_header(&f);
        let parsed = parse_field_header(&header).unwrap();
        assert_eq!(field_header(&parsed), header);
        assert_eq!(parsed.size(), q);
        assert_eq!(parsed.modulus(), f.modulus());
    }
}

#[test]
fn field_header_honors_a_non_canonical_modulus() {
    // x^3 + x^2 + 1 over GF(2): encoding 1 + 4 + 8 = 13 (canonical is 11).
    let f = Field::with_modulus(2, 3, &[1, 0, 1, 1]).unwrap();
    let header = field_header(&f);
    assert_eq!(header, "q=2^3 mod=13");
    let parsed = parse_field_header(&header).unwrap();
    assert_eq!(parsed.modulus(), &[1, 0, 1, 1]);
}

#[test]
fn field_header_rejections_name_the_problem() {
    for (line, needle) in [
        ("", "empty field header"),
        ("q=2^4", "missing mod="),
        ("p=2^4 mod=19", "must start with q="),
        ("q=16 mod=19", "must be <p>^<m>"),
        ("q=2^4 mod=19 extra", "trailing token"),
        ("q=2^4 mod=999", "degree above"),
        ("q=4^1 mod=4", "bad field header"), // 4 is not prime
        ("q=2^4 mod=16", "bad field header"), // x^4 is reducible
    ] {
        let err = parse_field_header(line).unwrap_err().to_string();
        assert!(err.contains(needle), "{line:?}: {err}");
    }
}

#[test]
fn matrix_round_trips_bit_exactly() {
    let f = Field::new(5, 1).unwrap();
    let m = GfMatrix::from_rows(&f, &[vec![0, 1, 2, 3], vec![4, 3, 2, 1]]).unwrap();
    let text = render_matrix(&m);
    assert_eq!(text, "q=5^1 mod=5\n2 4\n0 1 2 3\n4 3 2 1\n");
    let parsed = parse_matrix(&text).unwrap();
    assert_eq!(render_matrix(&parsed), text);
    assert_eq!(parsed, m);
}

#[test]
fn matrix_with_zero_rows_round_trips() {
    let f = Field::new(2, 1).unwrap();
    let m = GfMatrix::zeros(&f, 0, 7);
    let text = render_matrix(&m);
    assert_eq!(text, "q=2^1 mod=2\n0 7\n");
    assert_eq!(parse_matrix(&text).unwrap(), m);
}

#[test]
fn matrix_rejections_name_the_problem() {
    for (text, needle) in [
        ("q=5^1 mod=5\n2 4\n0 1 2 3\n", "unexpected end of input"),
        ("q=5^1 mod=5\n1 4\n0 1 2\n", "expected 4 entries"),
        ("q=5^1 mod=5\n1 3\n0 1 5\n", "outside GF(5)"),
        ("q=5^1 mod=5\n1 3\n0 1 x\n", "bad element"),
        ("q=5^1 mod=5\n1 0\n", "at least one column"),
        ("q=5^1 mod=5\n1\n0\n", "missing the column count"),
        ("q=5^1 mod=5\n1 3\n0 1 2\njunk\n", "trailing content"),
    ] {
        let err = format!("{:#}", parse_matrix(text).unwrap_err());
        assert!(err.contains(needle), "{text:?}: {err}");
    }
}

#[test]
fn code_file_round_trips_bit_exactly() {
    let code = hamming_code();
    let text = render_code(&code);
    assert!(text.ends_with("n=7 k=4\n"));
    let parsed = parse_code(&text).unwrap();
    assert_eq!(render_code(&parsed), text);
    assert_eq!(parsed.n(), 7);
    assert_eq!(parsed.k(), 4);
}

#[test]
fn code_trailer_must_match_the_matrix() {
    let code = hamming_code();
    let text = render_code(&code).replace("n=7 k=4", "n=7 k=3");
    let err = parse_code(&text).unwrap_err().to_string();
    assert!(err.contains("trailer says n=7 k=3"), "{err}");
    assert!(err.contains("n=7 k=4"), "{err}");
}

#[test]
fn code_file_rejects_a_rank_deficient_matrix() {
    // Code files carry full-rank parity-check matrices; a duplicated row
    // (4 rows, rank 3) must be rejected, not silently compacted.
    let text = "q=2^1 mod=2\n4 7\n\
                1 0 1 0 1 0 1\n0 1 1 0 0 1 1\n0 0 0 1 1 1 1\n1 0 1 0 1 0 1\n\
                n=7 k=4\n";
    let err = parse_code(text).unwrap_err().to_string();
    assert!(err.contains("bad parity-check matrix"), "{err}");
}

#[test]
fn code_file_rejects_missing_trailer() {
    let code = hamming_code();
    let text = render_matrix(code.pcm());
    let err = parse_code(&text).unwrap_err().to_string();
    assert!(err.contains("expected the n=<n> k=<k> trailer"), "{err}");
}

#[test]
fn alphas_round_trip_bit_exactly() {
    let f = Field::new(2, 4).unwrap();
    let grid = vec![vec![0, 3, 1], vec![5, 9, 1]];
    let text = render_alphas(&f, &grid);
    assert_eq!(text, "q=2^4 mod=19\n0 3 1\n5 9 1\n");
    let (pf, pg) = parse_alphas(&text).unwrap();
    assert_eq!(field_header(&pf), "q=2^4 mod=19");
    assert_eq!(pg, grid);
    assert_eq!(render_alphas(&pf, &pg), text);
}

#[test]
fn alphas_rejections_name_the_problem() {
    for (text, needle) in [
        ("q=2^4 mod=19\n", "no rows"),
        ("q=2^4 mod=19\n0 3 1\n5 9\n", "expected 3 entries"),
        ("q=2^4 mod=19\n0 3 16\n", "outside GF(16)"),
    ] {
        let err = parse_alphas(text).unwrap_err().to_string();
        assert!(err.contains(needle), "{text:?}: {err}");
    }
}

#[test]
fn structured_documents_round_trip_values_with_equals_signs() {
    let mut doc = Doc::new();
    doc.push("tool", "lrc");
    doc.push("field", "q=2^4 mod=19");
    doc.push("per_symbol_locality", "2 2 2 2 2 2");
    doc.push_opt::<usize>("availability_bound", None);
    let text = doc.render_structured();
    let parsed = Doc::parse_structured(&text).unwrap();
    assert_eq!(parsed, doc);
    assert_eq!(parsed.render_structured(), text);
    assert_eq!(parsed.get("field"), Some("q=2^4 mod=19"));
    assert_eq!(parsed.get("availability_bound"), Some("none"));
}

#[test]
fn text_rendering_aligns_keys_into_one_column() {
    let mut doc = Doc::new();
    doc.push("n", 8);
    doc.push("singleton_like", 4);
    let text = doc.render_text();
    assert_eq!(text, "n               8\nsingleton_like  4\n");
}
