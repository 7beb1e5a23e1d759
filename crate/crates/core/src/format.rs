//! Text formats: complex literals, the network file grammar and CSV rows.
//!
//! A network file is line oriented; `#` starts a comment.
//!
//! ```text
//! vertices a b c d          # whitespace-separated labels
//! edge a b R=1 L=0.5 C=2    # any of R, L and one of C or D
//! edge b c D=4
//! source a
//! ground c d
//! ```
//!
//! Omitted parameters are zero, `C=inf` means no capacitor, and giving both
//! `C` and `D` on one edge is an error.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::dirichlet::AdmittanceValue;
use crate::error::{Error, Result, SyntaxKind};
use crate::network::{EdgeParams, Network, NetworkBuilder, VertexId};
use crate::Complex;

/// Column header of sweep output; bound columns may follow.
pub const SWEEP_HEADER: &str = "lambda_re,lambda_im,status,P_re,P_im,Z_re,Z_im";

/// Column header of exhaustion output.
pub const EXHAUST_HEADER: &str =
    "lambda_re,lambda_im,verdict,limit_re,limit_im,n,oracle_status,oracle_re,oracle_im,deviation";

/// Formats as `a+bi` or `a-bi`. Both parts use the shortest decimal form
/// that reads back to the same `f64`, so the round trip is exact.
pub fn format_complex(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i` and similar; whitespace is
/// ignored and exponents are allowed. Non-finite parts are rejected.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Syntax {
        line: 0,
        kind: SyntaxKind::BadComplex(text.to_string()),
    };
    let real = |t: &str| -> Result<f64> {
        let v: f64 = t.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => real(t),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(real(&s)?, 0.0));
    };
    // The sign that separates the parts is the last one not in an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex::new(real(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex::new(0.0, imag(body)?)),
    }
}

fn syntax(line: usize, kind: SyntaxKind) -> Error {
    Error::Syntax { line, kind }
}

fn at_line(line: usize, err: Error) -> Error {
    Error::AtLine {
        line,
        source: Box::new(err),
    }
}

struct EdgeLine {
    line: usize,
    u: String,
    v: String,
    params: EdgeParams,
}

/// Parses a network file; the ground set must be nonempty.
pub fn parse_network_file(text: &str) -> Result<Network> {
    parse_network_file_with(text, false)
}

/// Parses a network file, optionally accepting an empty `ground` line (for
/// networks used as the base of an exhaustion).
pub fn parse_network_file_with(text: &str, allow_empty_ground: bool) -> Result<Network> {
    let mut vertices: Option<(usize, Vec<String>)> = None;
    let mut source: Option<(usize, String)> = None;
    let mut ground: Option<(usize, Vec<String>)> = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else { continue };
        match directive {
            "vertices" => {
                if vertices.is_some() {
                    return Err(syntax(line, SyntaxKind::DuplicateSection("vertices")));
                }
                vertices = Some((line, tokens.map(str::to_string).collect()));
            }
            "source" => {
                if source.is_some() {
                    return Err(syntax(line, SyntaxKind::DuplicateSection("source")));
                }
                let label = tokens.next().ok_or(syntax(line, SyntaxKind::MissingArgument("source vertex")))?;
                if let Some(extra) = tokens.next() {
                    return Err(syntax(line, SyntaxKind::UnknownParameter(extra.to_string())));
                }
                source = Some((line, label.to_string()));
            }
            "ground" => {
                if ground.is_some() {
                    return Err(syntax(line, SyntaxKind::DuplicateSection("ground")));
                }
                ground = Some((line, tokens.map(str::to_string).collect()));
            }
            "edge" => edges.push(parse_edge(line, tokens)?),
            other => return Err(syntax(line, SyntaxKind::UnknownDirective(other.to_string()))),
        }
    }

    let (v_line, labels) = vertices.ok_or(syntax(0, SyntaxKind::MissingSection("vertices")))?;
    let (s_line, source) = source.ok_or(syntax(0, SyntaxKind::MissingSection("source")))?;
    let (g_line, ground) = ground.ok_or(syntax(0, SyntaxKind::MissingSection("ground")))?;

    // Check what can be pinned to a line before handing over to the builder.
    let mut declared = HashSet::new();
    for label in &labels {
        let id = VertexId::new(label.as_str()).map_err(|e| at_line(v_line, e))?;
        if !declared.insert(id.as_str().to_string()) {
            return Err(at_line(v_line, Error::DuplicateVertex(label.clone())));
        }
    }
    if labels.len() < 2 {
        return Err(at_line(v_line, Error::TooFewVertices));
    }
    let mut seen: HashMap<(String, String), usize> = HashMap::new();
    for e in &edges {
        for end in [&e.u, &e.v] {
            if !declared.contains(end) {
                return Err(at_line(e.line, Error::UnknownEndpoint(end.clone())));
            }
        }
        if e.u == e.v {
            return Err(at_line(e.line, Error::SelfLoop(e.u.clone())));
        }
        let key = if e.u < e.v { (e.u.clone(), e.v.clone()) } else { (e.v.clone(), e.u.clone()) };
        if seen.insert(key, e.line).is_some() {
            return Err(at_line(e.line, Error::ParallelEdge(e.u.clone(), e.v.clone())));
        }
    }
    if !declared.contains(&source) {
        return Err(at_line(s_line, Error::UnknownEndpoint(source)));
    }
    for g in &ground {
        if !declared.contains(g) {
            return Err(at_line(g_line, Error::UnknownEndpoint(g.clone())));
        }
    }
    if ground.contains(&source) {
        return Err(at_line(g_line, Error::SourceInGround(source)));
    }
    if ground.is_empty() && !allow_empty_ground {
        return Err(at_line(g_line, Error::EmptyGround));
    }

    let mut builder = NetworkBuilder::new()
        .vertices(labels)
        .source(source)
        .ground(ground)
        .allow_empty_ground(allow_empty_ground);
    for e in edges {
        builder = builder.edge(e.u, e.v, e.params);
    }
    builder.build()
}

fn parse_edge<'a>(line: usize, mut tokens: impl Iterator<Item = &'a str>) -> Result<EdgeLine> {
    let u = tokens.next().ok_or(syntax(line, SyntaxKind::MissingArgument("edge endpoints")))?;
    let v = tokens.next().ok_or(syntax(line, SyntaxKind::MissingArgument("edge endpoints")))?;
    let mut values: HashMap<&str, f64> = HashMap::new();
    for token in tokens {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| syntax(line, SyntaxKind::UnknownParameter(token.to_string())))?;
        if !matches!(key, "R" | "L" | "C" | "D") {
            return Err(syntax(line, SyntaxKind::UnknownParameter(key.to_string())));
        }
        let number: f64 = value
            .parse()
            .map_err(|_| syntax(line, SyntaxKind::BadNumber(value.to_string())))?;
        if number.is_nan() {
            return Err(syntax(line, SyntaxKind::BadNumber(value.to_string())));
        }
        if values.insert(key, number).is_some() {
            return Err(syntax(line, SyntaxKind::DuplicateParameter(key.to_string())));
        }
    }
    let get = |k| values.get(k).copied().unwrap_or(0.0);
    let params = match (values.get("C"), values.get("D")) {
        (Some(_), Some(_)) => return Err(syntax(line, SyntaxKind::MutuallyExclusive)),
        (Some(&c), None) => EdgeParams::with_capacitance(get("R"), get("L"), c),
        _ => EdgeParams::new(get("R"), get("L"), get("D")),
    };
    let params = params.map_err(|e| match e {
        Error::ZeroEdgeParams(..) => at_line(line, Error::ZeroEdgeParams(u.to_string(), v.to_string())),
        other => at_line(line, other),
    })?;
    Ok(EdgeLine {
        line,
        u: u.to_string(),
        v: v.to_string(),
        params,
    })
}

/// Writes `network` in the file grammar, with parameters as `R`, `L`, `D`.
pub fn write_network_file(network: &Network) -> String {
    let mut out = String::from("vertices");
    for label in network.labels() {
        write!(out, " {label}").unwrap();
    }
    out.push('\n');
    for e in network.edges() {
        write!(out, "edge {} {}", network.label(e.u), network.label(e.v)).unwrap();
        for (name, value) in [("R", e.params.r()), ("L", e.params.l()), ("D", e.params.d())] {
            if value != 0.0 {
                write!(out, " {name}={value}").unwrap();
            }
        }
        out.push('\n');
    }
    writeln!(out, "source {}", network.label(network.source())).unwrap();
    out.push_str("ground");
    for &g in network.ground() {
        write!(out, " {}", network.label(g)).unwrap();
    }
    out.push('\n');
    out
}

fn push_complex(out: &mut String, z: Option<Complex>) {
    match z {
        Some(z) => write!(out, ",{},{}", z.re, z.im).unwrap(),
        None => out.push_str(",,"),
    }
}

fn push_opt(out: &mut String, x: Option<f64>) {
    match x {
        Some(x) => write!(out, ",{x}").unwrap(),
        None => out.push(','),
    }
}

/// One sweep row. `P` and `Z = 1/P` are written when finite and left empty
/// otherwise; `extra` columns follow, empty when `None`.
pub fn sweep_row(lambda: Complex, p: &AdmittanceValue, extra: &[Option<f64>]) -> String {
    let mut out = format!("{},{},{}", lambda.re, lambda.im, p.status());
    push_complex(&mut out, p.finite());
    let z = match p {
        AdmittanceValue::Undefined(_) => None,
        other => other.reciprocal().finite(),
    };
    push_complex(&mut out, z);
    for &x in extra {
        push_opt(&mut out, x);
    }
    out
}

/// One exhaustion row: verdict, limit estimate, layers used and the
/// closed-form value with its distance from the estimate when available.
pub fn exhaust_row(
    lambda: Complex,
    verdict: &str,
    limit: Option<Complex>,
    n: usize,
    oracle: Option<&AdmittanceValue>,
) -> String {
    let mut out = format!("{},{},{}", lambda.re, lambda.im, verdict);
    push_complex(&mut out, limit);
    write!(out, ",{n}").unwrap();
    match oracle {
        Some(o) => write!(out, ",{}", o.status()).unwrap(),
        None => out.push(','),
    }
    let o = oracle.and_then(|o| o.finite());
    push_complex(&mut out, o);
    push_opt(&mut out, limit.zip(o).map(|(a, b)| (a - b).norm()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::UndefinedReason;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn complex_forms() {
        let cases = [
            ("1+2i", c(1.0, 2.0)),
            ("1-2i", c(1.0, -2.0)),
            ("-1.5e-3+2E2i", c(-1.5e-3, 200.0)),
            ("3", c(3.0, 0.0)),
            ("-3", c(-3.0, 0.0)),
            ("i", c(0.0, 1.0)),
            ("-i", c(0.0, -1.0)),
            ("+i", c(0.0, 1.0)),
            ("2i", c(0.0, 2.0)),
            ("1e-5i", c(0.0, 1e-5)),
            (" 0.5 - i ", c(0.5, -1.0)),
            ("2+i", c(2.0, 1.0)),
            ("1e+3-1e-3i", c(1e3, -1e-3)),
        ];
        for (text, want) in cases {
            assert_eq!(parse_complex(text).unwrap(), want, "{text}");
        }
        for bad in ["", "ii", "1+", "a+bi", "inf", "1+nani", "1+2j", "1++2i", "--i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn complex_display() {
        assert_eq!(format_complex(c(1.0, -2.0)), "1-2i");
        assert_eq!(format_complex(c(-0.0, 0.0)), "-0+0i");
        assert_eq!(format_complex(c(0.1, 1e-3)), "0.1+0.001i");
        assert_eq!(format_complex(c(2.5, -0.0)), "2.5-0i");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn complex_round_trip_is_exact(re in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO,
                                       im in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
            let z = c(re, im);
            let back = parse_complex(&format_complex(z)).unwrap();
            prop_assert_eq!(back.re.to_bits(), re.to_bits());
            prop_assert_eq!(back.im.to_bits(), im.to_bits());
        }
    }

    const FIVE: &str = "\
# five vertex example
vertices 0 1 2 3 4
edge 0 3 C=1
edge 3 1 L=1
edge 0 2 L=1
edge 2 3 R=1
edge 2 1 C=1
edge 0 4 C=1   # trailing comment
edge 4 1 L=1
source 1
ground 0
";

    #[test]
    fn parses_five_vertex_file() {
        let net = parse_network_file(FIVE).unwrap();
        let reference = crate::network::five_vertex_example();
        assert_eq!(net.vertex_count(), reference.vertex_count());
        assert_eq!(net.edges(), reference.edges());
        assert_eq!(net.source(), reference.source());
        assert_eq!(net.ground(), reference.ground());
        let again = parse_network_file(&write_network_file(&net)).unwrap();
        assert_eq!(again.edges(), net.edges());
    }

    fn err(text: &str) -> Error {
        parse_network_file(text).unwrap_err()
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let base = "vertices a b\nedge a b R=1\nsource a\nground b\n";
        assert!(parse_network_file(base).is_ok());
        assert_eq!(
            err("vertices a b\nedge a b C=1 D=1\nsource a\nground b\n"),
            Error::Syntax { line: 2, kind: SyntaxKind::MutuallyExclusive }
        );
        assert_eq!(
            err("vertices a b\nedge a b X=1\nsource a\nground b\n"),
            Error::Syntax { line: 2, kind: SyntaxKind::UnknownParameter("X".into()) }
        );
        assert_eq!(
            err("vertices a b\nedge a b R=x\nsource a\nground b\n"),
            Error::Syntax { line: 2, kind: SyntaxKind::BadNumber("x".into()) }
        );
        assert_eq!(
            err("vertices a b\nedge a b R=1 R=2\nsource a\nground b\n"),
            Error::Syntax { line: 2, kind: SyntaxKind::DuplicateParameter("R".into()) }
        );
        assert_eq!(
            err("vertices a b\nwire a b\n"),
            Error::Syntax { line: 2, kind: SyntaxKind::UnknownDirective("wire".into()) }
        );
        assert_eq!(
            err("vertices a b\nedge a b R=1\nground b\n"),
            Error::Syntax { line: 0, kind: SyntaxKind::MissingSection("source") }
        );
        assert_eq!(
            err("vertices a b\nvertices c\n"),
            Error::Syntax { line: 2, kind: SyntaxKind::DuplicateSection("vertices") }
        );
        assert_eq!(
            err("vertices a b\nedge a\nsource a\nground b\n"),
            Error::Syntax { line: 2, kind: SyntaxKind::MissingArgument("edge endpoints") }
        );
    }

    #[test]
    fn semantic_errors_carry_lines() {
        let cases = [
            ("vertices a b\nedge a c R=1\nsource a\nground b\n", 2, Error::UnknownEndpoint("c".into())),
            ("vertices a a\nedge a a R=1\nsource a\nground b\n", 1, Error::DuplicateVertex("a".into())),
            ("vertices a b\nedge a a R=1\nsource a\nground b\n", 2, Error::SelfLoop("a".into())),
            ("vertices a b\n\nedge a b R=1\nedge b a L=1\nsource a\nground b\n", 4, Error::ParallelEdge("b".into(), "a".into())),
            ("vertices a b\nedge a b\nsource a\nground b\n", 2, Error::ZeroEdgeParams("a".into(), "b".into())),
            ("vertices a b\nedge a b R=-1\nsource a\nground b\n", 2, Error::InvalidEdgeParam { name: "R", value: -1.0 }),
            ("vertices a b\nedge a b C=0\nsource a\nground b\n", 2, Error::InvalidEdgeParam { name: "C", value: 0.0 }),
            ("vertices a b\nedge a b R=inf\nsource a\nground b\n", 2, Error::InvalidEdgeParam { name: "R", value: f64::INFINITY }),
            ("vertices a\nsource a\nground a\n", 1, Error::TooFewVertices),
            ("vertices a b\nedge a b R=1\nsource z\nground b\n", 3, Error::UnknownEndpoint("z".into())),
            ("vertices a b\nedge a b R=1\nsource a\nground a\n", 4, Error::SourceInGround("a".into())),
            ("vertices a b\nedge a b R=1\nsource a\nground\n", 4, Error::EmptyGround),
        ];
        for (text, line, root) in cases {
            match err(text) {
                Error::AtLine { line: got, source } => {
                    assert_eq!(got, line, "{text}");
                    assert_eq!(*source, root, "{text}");
                }
                other => panic!("{text}: {other:?}"),
            }
        }
        assert_eq!(err("vertices a b c\nedge a b R=1\nsource a\nground b\n"), Error::Disconnected);
    }

    #[test]
    fn capacitance_infinity_is_open_capacitor() {
        let net = parse_network_file("vertices a b\nedge a b L=2 C=inf\nsource a\nground b\n").unwrap();
        assert_eq!(net.edges()[0].params, EdgeParams::new(0.0, 2.0, 0.0).unwrap());
        let net = parse_network_file("vertices a b\nedge a b C=0.25\nsource a\nground b\n").unwrap();
        assert_eq!(net.edges()[0].params.d(), 4.0);
    }

    #[test]
    fn sweep_rows() {
        let lam = c(0.0, 2.0);
        assert_eq!(SWEEP_HEADER.split(',').count(), 7);
        assert_eq!(sweep_row(lam, &AdmittanceValue::Finite(c(0.5, -0.5)), &[]), "0,2,finite,0.5,-0.5,1,1");
        assert_eq!(sweep_row(lam, &AdmittanceValue::Infinite, &[]), "0,2,infinite,,,0,0");
        assert_eq!(sweep_row(lam, &AdmittanceValue::Undefined(UndefinedReason::LambdaForbidden), &[]), "0,2,undefined,,,,");
        assert_eq!(sweep_row(lam, &AdmittanceValue::Finite(c(0.0, 0.0)), &[Some(1.5), None]), "0,2,finite,0,0,,,1.5,");
    }

    #[test]
    fn exhaust_rows() {
        let lam = c(1.0, 0.0);
        let o = AdmittanceValue::Finite(c(0.5, 0.0));
        let row = exhaust_row(lam, "converged", Some(c(0.5, 0.0)), 30, Some(&o));
        assert_eq!(row, "1,0,converged,0.5,0,30,finite,0.5,0,0");
        assert_eq!(row.split(',').count(), EXHAUST_HEADER.split(',').count());
        assert_eq!(exhaust_row(lam, "oscillating", None, 200, None), "1,0,oscillating,,,200,,,,");
    }
}
