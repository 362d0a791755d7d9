//! Command-line front end: parse pretzel specifications, emit braid words
//! in several formats, run the verification certificate, emit planar
//! diagrams, and render drawings.

use crate::braid::BraidWord;
use crate::diagram::{closure_pd, pretzel_pd, Container, Piece, PlanarDiagram, Sense};
use crate::error::{Error, Result};
use crate::invariants::{certify, Caps, CertifyOutcome};
use crate::pretzel::{synthesize, CaseTag, Pretzel};
use crate::render::render_svg;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_SKIPPED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;
pub const EXIT_IO: i32 = 74;

/// Accepts `P(a1,...,an)`, `(a1,...,an)`, or bare integers separated by
/// commas or whitespace. Errors carry the byte position of the offending
/// token.
pub fn parse_pretzel(text: &str) -> Result<Pretzel> {
    let values = parse_signed_list(text, "pretzel entry")?;
    for &(v, pos) in &values {
        if v == 0 {
            return Err(Error::Parse { pos, msg: "zero entries unsupported".into() });
        }
    }
    Pretzel::new(values.into_iter().map(|(v, _)| v).collect())
}

/// Braid letters in the same surface syntax as pretzel entries.
pub fn parse_braid_letters(text: &str) -> Result<Vec<i64>> {
    let values = parse_signed_list(text, "braid letter")?;
    for &(v, pos) in &values {
        if v == 0 {
            return Err(Error::Parse { pos, msg: "braid letters must be nonzero".into() });
        }
    }
    Ok(values.into_iter().map(|(v, _)| v).collect())
}

fn parse_signed_list(text: &str, what: &str) -> Result<Vec<(i64, usize)>> {
    let bytes = text.as_bytes();
    let n = bytes.len();
    let mut i = 0usize;
    let skip_ws = |i: &mut usize| {
        while *i < n && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i < n && (bytes[i] == b'P' || bytes[i] == b'p') {
        i += 1;
        skip_ws(&mut i);
    }
    let mut close_expected = false;
    if i < n && bytes[i] == b'(' {
        close_expected = true;
        i += 1;
    }
    let mut out: Vec<(i64, usize)> = Vec::new();
    let mut after_comma = false;
    loop {
        skip_ws(&mut i);
        if i >= n {
            break;
        }
        match bytes[i] {
            b')' => {
                if !close_expected {
                    return Err(Error::Parse { pos: i, msg: "unexpected ')'".into() });
                }
                if after_comma {
                    return Err(Error::Parse { pos: i, msg: "expected an integer after ','".into() });
                }
                close_expected = false;
                i += 1;
                skip_ws(&mut i);
                if i < n {
                    return Err(Error::Parse { pos: i, msg: "trailing input after ')'".into() });
                }
                break;
            }
            b',' => {
                if out.is_empty() || after_comma {
                    return Err(Error::Parse { pos: i, msg: "expected an integer before ','".into() });
                }
                after_comma = true;
                i += 1;
            }
            _ => {
                let start = i;
                if bytes[i] == b'-' || bytes[i] == b'+' {
                    i += 1;
                }
                let digits = i;
                while i < n && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("expected an integer, found {:?}", &text[start..=start]),
                    });
                }
                let v: i64 = text[start..i].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "integer out of range".into(),
                })?;
                out.push((v, start));
                after_comma = false;
            }
        }
    }
    if close_expected {
        return Err(Error::Parse { pos: n, msg: "missing ')'".into() });
    }
    if after_comma {
        return Err(Error::Parse { pos: n, msg: "expected an integer after ','".into() });
    }
    if out.is_empty() {
        return Err(Error::Parse { pos: 0, msg: format!("expected at least one {what}") });
    }
    Ok(out)
}

/// Output encodings for braid words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Integer sequence: `(1,-2,1,-2)`
    Seq,
    /// Generator names: `s1 s2^-1 s1 s2^-1`
    Sigma,
    /// One letter per crossing, uppercase for inverses: `aBaB`
    Letters,
    /// Machine-readable object with the stable schema
    Json,
    /// TeX markup with sigma subscripts
    Latex,
}

/// Renders a word in the given textual format (`json` is handled by the
/// command layer, which has the surrounding context).
pub fn format_word(w: &BraidWord, format: FormatArg) -> Result<String> {
    match format {
        FormatArg::Seq => Ok(w.to_string()),
        FormatArg::Sigma => {
            if w.is_empty() {
                return Ok("e".into());
            }
            Ok(w.letters()
                .iter()
                .map(|&m| {
                    if m > 0 {
                        format!("s{m}")
                    } else {
                        format!("s{}^-1", -m)
                    }
                })
                .collect::<Vec<_>>()
                .join(" "))
        }
        FormatArg::Letters => {
            let max_gen = w.letters().iter().map(|m| m.unsigned_abs()).max().unwrap_or(0);
            if max_gen > 26 {
                return Err(Error::InvalidArgument(format!(
                    "letters format covers generator indices up to 26, this word uses {max_gen}; use seq or json"
                )));
            }
            if w.is_empty() {
                return Ok("e".into());
            }
            Ok(w.letters()
                .iter()
                .map(|&m| {
                    let c = (b'a' + (m.unsigned_abs() as u8 - 1)) as char;
                    if m > 0 {
                        c
                    } else {
                        c.to_ascii_uppercase()
                    }
                })
                .collect())
        }
        FormatArg::Latex => {
            if w.is_empty() {
                return Ok("e".into());
            }
            Ok(w.letters()
                .iter()
                .map(|&m| {
                    if m > 0 {
                        format!("\\sigma_{{{m}}}")
                    } else {
                        format!("\\sigma_{{{}}}^{{-1}}", -m)
                    }
                })
                .collect())
        }
        FormatArg::Json => Err(Error::Internal("json handled by the command layer".into())),
    }
}

/// The stable JSON object for one pretzel. `verified` and `framing_k`
/// stay null unless a certificate ran.
#[derive(Debug, Serialize)]
struct SynthJson<'a> {
    pretzel: &'a [i64],
    case: CaseTag,
    word: &'a [i64],
    strands: usize,
    crossings: usize,
    components: usize,
    verified: Option<bool>,
    framing_k: Option<i64>,
}

#[derive(Debug, Serialize)]
struct BatchLine {
    input: String,
    status: &'static str,
    error: Option<String>,
    pretzel: Option<Vec<i64>>,
    case: Option<CaseTag>,
    word: Option<Vec<i64>>,
    strands: Option<usize>,
    crossings: Option<usize>,
    components: Option<usize>,
    verified: Option<bool>,
    framing_k: Option<i64>,
}

#[derive(Debug, Serialize)]
struct PdCrossingJson {
    slots: [u32; 4],
    over: [u32; 2],
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
enum PdContainerJson {
    Outer,
    InsideFace { dart: u32 },
    InsideLoop { index: usize },
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum PdPieceJson {
    Core { root_slot: u32, outer_dart: u32, container: PdContainerJson },
    Loop { container: PdContainerJson },
}

#[derive(Debug, Serialize)]
struct PdOrientationJson {
    flows: Vec<(bool, bool)>,
    loop_senses: Vec<&'static str>,
}

#[derive(Debug, Serialize)]
struct PdJson {
    crossings: Vec<PdCrossingJson>,
    edges: Vec<(u32, u32)>,
    free_loops: usize,
    outer_face: Option<u32>,
    pieces: Vec<PdPieceJson>,
    orientation: Option<PdOrientationJson>,
}

fn container_json(c: Container) -> PdContainerJson {
    match c {
        Container::Outer => PdContainerJson::Outer,
        Container::InsideFace { dart } => PdContainerJson::InsideFace { dart },
        Container::InsideLoop { index } => PdContainerJson::InsideLoop { index },
    }
}

fn pd_json(pd: &PlanarDiagram) -> PdJson {
    PdJson {
        crossings: (0..pd.crossing_count())
            .map(|t| {
                let b = 4 * t as u32;
                PdCrossingJson { slots: [b, b + 1, b + 2, b + 3], over: [b, b + 2] }
            })
            .collect(),
        edges: pd.edges(),
        free_loops: pd.free_loop_count(),
        outer_face: pd.outer_face_dart(),
        pieces: pd
            .pieces()
            .iter()
            .map(|p| match *p {
                Piece::Core { root_slot, outer_dart, container } => PdPieceJson::Core {
                    root_slot,
                    outer_dart,
                    container: container_json(container),
                },
                Piece::Loop { container } => {
                    PdPieceJson::Loop { container: container_json(container) }
                }
            })
            .collect(),
        orientation: pd.orientation().map(|o| PdOrientationJson {
            flows: o.flows.clone(),
            loop_senses: o
                .loop_senses
                .iter()
                .map(|s| match s {
                    Sense::Ccw => "ccw",
                    Sense::Cw => "cw",
                })
                .collect(),
        }),
    }
}

#[derive(Parser)]
#[command(
    name = "pretzel-braids",
    version,
    about = "Braid words for pretzel links, with exact verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Synthesize a braid word whose closure is the given pretzel link
    Synth {
        /// Pretzel specification, e.g. "P(-2,3,7)" or "9 5 7 11 13"
        pretzel: String,
        #[arg(long, value_enum, default_value = "seq")]
        format: FormatArg,
        /// Freely reduce the word before printing
        #[arg(long)]
        reduce: bool,
        /// Print only the predicted crossing and strand counts
        #[arg(long)]
        counts: bool,
    },
    /// Check the synthesized braid against independent link invariants
    Verify {
        pretzel: String,
    },
    /// Emit a planar diagram as JSON
    Pd {
        /// Pretzel specification (omit when using --braid)
        pretzel: Option<String>,
        /// Braid word to close instead, e.g. "(1,-2,1)"
        #[arg(long, conflicts_with = "pretzel")]
        braid: Option<String>,
        /// Strand count for --braid; defaults to max generator + 1
        #[arg(long, requires = "braid")]
        strands: Option<usize>,
    },
    /// Render the synthesized braid word as an SVG drawing
    Render {
        pretzel: String,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Verify one pretzel per input line, reporting JSON lines
    Batch {
        file: PathBuf,
    },
}

/// Oracle caps, from `PRETZEL_BRAID_CAPS="crossings,strands"` when set.
fn caps_from_env() -> std::result::Result<Caps, String> {
    let Ok(raw) = std::env::var("PRETZEL_BRAID_CAPS") else {
        return Ok(Caps::default());
    };
    let parts: Vec<&str> = raw.split(',').collect();
    let parsed: Option<(usize, usize)> = match parts.as_slice() {
        [a, b] => a.trim().parse().ok().zip(b.trim().parse().ok()),
        _ => None,
    };
    match parsed {
        Some((max_crossings, max_strands)) => Ok(Caps { max_crossings, max_strands }),
        None => Err(format!(
            "PRETZEL_BRAID_CAPS must be \"crossings,strands\", got {raw:?}"
        )),
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let caps = match caps_from_env() {
        Ok(caps) => caps,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.cmd, &caps) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => EXIT_INTERNAL,
                Error::CrossingCapExceeded { .. } | Error::StrandCapExceeded { .. } => {
                    EXIT_SKIPPED
                }
                Error::MissingOrientation
                | Error::InconsistentOrientation(_, _)
                | Error::ZeroPolynomial => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cmd: Cmd, caps: &Caps) -> Result<i32> {
    match cmd {
        Cmd::Synth { pretzel, format, reduce, counts } => {
            let p = parse_pretzel(&pretzel)?;
            let s = synthesize(&p)?;
            if counts {
                println!("crossings: {}, strands: {}", s.counts.crossings, s.counts.strands);
                return Ok(EXIT_OK);
            }
            let word = if reduce { s.word.free_reduce() } else { s.word };
            if format == FormatArg::Json {
                let dto = SynthJson {
                    pretzel: p.entries(),
                    case: s.case,
                    word: word.letters(),
                    strands: word.strands(),
                    crossings: word.len(),
                    components: word.closure_components(),
                    verified: None,
                    framing_k: None,
                };
                println!("{}", serde_json::to_string(&dto).expect("serializable"));
            } else {
                println!("{}", format_word(&word, format)?);
                println!("strands: {}", word.strands());
            }
            Ok(EXIT_OK)
        }
        Cmd::Verify { pretzel } => {
            let p = parse_pretzel(&pretzel)?;
            match certify(&p, caps)? {
                CertifyOutcome::Done(r) => {
                    println!("case: {:?}", r.case);
                    println!("word: {}", r.word);
                    println!("letters: {} (predicted {})", r.word.len(), r.predicted.crossings);
                    println!(
                        "strands: {} (predicted {})",
                        r.word.strands(),
                        r.predicted.strands
                    );
                    println!(
                        "components: pretzel {}, closure {}",
                        r.components_pretzel, r.components_closure
                    );
                    match r.framing_exponent {
                        Some(k) => println!("framing exponent: {k}"),
                        None => println!("framing exponent: none (brackets differ)"),
                    }
                    println!("verdict: {}", if r.passed { "PASS" } else { "FAIL" });
                    Ok(if r.passed { EXIT_OK } else { EXIT_FAIL })
                }
                CertifyOutcome::Skipped { crossings, strands, caps } => {
                    println!(
                        "skipped: {crossings} crossings / {strands} strands exceed caps \
                         ({} crossings, {} strands); set PRETZEL_BRAID_CAPS to raise",
                        caps.max_crossings, caps.max_strands
                    );
                    println!("verdict: SKIPPED");
                    Ok(EXIT_SKIPPED)
                }
            }
        }
        Cmd::Pd { pretzel, braid, strands } => {
            let pd = match (pretzel, braid) {
                (Some(text), None) => pretzel_pd(&parse_pretzel(&text)?),
                (None, Some(text)) => {
                    let letters = parse_braid_letters(&text)?;
                    let min = letters.iter().map(|m| m.unsigned_abs() as usize + 1).max();
                    let s = strands.unwrap_or_else(|| min.unwrap_or(1));
                    closure_pd(&BraidWord::new(letters, s)?)
                }
                _ => {
                    eprintln!("error: provide a pretzel or --braid");
                    return Ok(EXIT_USAGE);
                }
            };
            println!("{}", serde_json::to_string(&pd_json(&pd)).expect("serializable"));
            Ok(EXIT_OK)
        }
        Cmd::Render { pretzel, svg } => {
            let p = parse_pretzel(&pretzel)?;
            let s = synthesize(&p)?;
            let drawing = render_svg(&s.word);
            if let Err(e) = std::fs::write(&svg, drawing) {
                eprintln!("error: cannot write {}: {e}", svg.display());
                return Ok(EXIT_IO);
            }
            Ok(EXIT_OK)
        }
        Cmd::Batch { file } => {
            let content = match std::fs::read_to_string(&file) {
                Ok(content) => content,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return Ok(EXIT_IO);
                }
            };
            let mut all_ok = true;
            for line in content.lines() {
                let report = batch_line(line, caps);
                if !matches!(report.status, "pass" | "skipped") {
                    all_ok = false;
                }
                println!("{}", serde_json::to_string(&report).expect("serializable"));
            }
            Ok(if all_ok { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn batch_line(line: &str, caps: &Caps) -> BatchLine {
    let mut report = BatchLine {
        input: line.to_string(),
        status: "parse-error",
        error: None,
        pretzel: None,
        case: None,
        word: None,
        strands: None,
        crossings: None,
        components: None,
        verified: None,
        framing_k: None,
    };
    let p = match parse_pretzel(line) {
        Ok(p) => p,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.pretzel = Some(p.entries().to_vec());
    match certify(&p, caps) {
        Ok(CertifyOutcome::Done(r)) => {
            report.status = if r.passed { "pass" } else { "fail" };
            report.case = Some(r.case);
            report.word = Some(r.word.letters().to_vec());
            report.strands = Some(r.word.strands());
            report.crossings = Some(r.word.len());
            report.components = Some(r.components_closure);
            report.verified = Some(r.passed);
            report.framing_k = r.framing_exponent;
        }
        Ok(CertifyOutcome::Skipped { .. }) => {
            report.status = "skipped";
            if let Ok(s) = synthesize(&p) {
                report.case = Some(s.case);
                report.word = Some(s.word.letters().to_vec());
                report.strands = Some(s.word.strands());
                report.crossings = Some(s.word.len());
                report.components = Some(s.word.closure_components());
            }
        }
        Err(e) => {
            report.status = "fail";
            report.error = Some(e.to_string());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_accepted_shapes() {
        let expect = Pretzel::new(vec![-2, 3, 7]).unwrap();
        for text in ["P(-2,3,7)", "(-2,3,7)", "-2,3,7", "-2 3 7", "  p( -2 , 3 , 7 ) "] {
            assert_eq!(parse_pretzel(text).unwrap(), expect, "{text:?}");
        }
        assert_eq!(
            parse_pretzel("9 5 7 11 13").unwrap(),
            Pretzel::new(vec![9, 5, 7, 11, 13]).unwrap()
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_pretzel("P(1,0,3)") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 4);
                assert_eq!(msg, "zero entries unsupported");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pretzel(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_pretzel("P()"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pretzel("P(1,2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pretzel("1,,2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pretzel("1,x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_pretzel("(1,2) junk"), Err(Error::Parse { .. })));
    }

    #[test]
    fn word_formats() {
        let w = BraidWord::new(vec![1, -2, 1, -2], 3).unwrap();
        assert_eq!(format_word(&w, FormatArg::Seq).unwrap(), "(1,-2,1,-2)");
        assert_eq!(format_word(&w, FormatArg::Sigma).unwrap(), "s1 s2^-1 s1 s2^-1");
        assert_eq!(format_word(&w, FormatArg::Letters).unwrap(), "aBaB");
        assert_eq!(
            format_word(&w, FormatArg::Latex).unwrap(),
            "\\sigma_{1}\\sigma_{2}^{-1}\\sigma_{1}\\sigma_{2}^{-1}"
        );

        let empty = BraidWord::empty(4);
        assert_eq!(format_word(&empty, FormatArg::Seq).unwrap(), "()");
        assert_eq!(format_word(&empty, FormatArg::Sigma).unwrap(), "e");

        let wide = BraidWord::new(vec![27], 30).unwrap();
        assert!(format_word(&wide, FormatArg::Letters).is_err());
        let edge = BraidWord::new(vec![26, -26], 30).unwrap();
        assert_eq!(format_word(&edge, FormatArg::Letters).unwrap(), "zZ");
    }

    #[test]
    fn seq_output_reparses_to_the_same_word() {
        let s = synthesize(&Pretzel::new(vec![1, 1, 1, -2]).unwrap()).unwrap();
        let text = format_word(&s.word, FormatArg::Seq).unwrap();
        assert_eq!(parse_braid_letters(&text).unwrap(), s.word.letters());
    }

    proptest! {
        #[test]
        fn pretzel_display_round_trips(entries in proptest::collection::vec(
            prop_oneof![-50i64..-1, 1i64..50], 1..8)) {
            let p = Pretzel::new(entries).unwrap();
            prop_assert_eq!(parse_pretzel(&p.to_string()).unwrap(), p);
        }
    }
}
