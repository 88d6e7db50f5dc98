//! N-Triples reading and canonical writing.
//!
//! Output is one triple per line, sorted by the line text, so equal graphs
//! always serialize to identical bytes.

use std::io::{Read, Write};

use super::lexer::Cursor;
use super::term::{BlankNode, Iri, Literal, Term, Triple};
use super::vocab::rdf;
use super::{Graph, RdfError};

pub fn parse_ntriples(text: &str) -> Result<Graph, RdfError> {
    let mut cur = Cursor::new(text);
    let mut graph = Graph::new();
    loop {
        cur.skip_inline_ws();
        match cur.peek() {
            None => break,
            Some('\n' | '\r') => {
                cur.bump();
                continue;
            }
            Some('#') => {
                cur.skip_comment();
                continue;
            }
            _ => {}
        }
        let triple = statement(&mut cur)?;
        graph.insert(triple);
        cur.skip_inline_ws();
        if cur.peek() == Some('#') {
            cur.skip_comment();
        }
        match cur.peek() {
            None | Some('\n' | '\r') => {}
            Some(_) => return Err(cur.error("expected end of line after `.`")),
        }
    }
    Ok(graph)
}

/// Reads N-Triples from a byte stream. Input must be UTF-8.
pub fn read_ntriples<R: Read>(mut reader: R) -> Result<Graph, RdfError> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    let text = decode_utf8(&bytes)?;
    parse_ntriples(text)
}

pub(crate) fn decode_utf8(bytes: &[u8]) -> Result<&str, RdfError> {
    std::str::from_utf8(bytes).map_err(|e| {
        let valid = &bytes[..e.valid_up_to()];
        let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
        RdfError::Syntax {
            line,
            token: format!("byte {:#04x}", bytes[e.valid_up_to()]),
            message: "input is not valid UTF-8".to_string(),
        }
    })
}

fn statement(cur: &mut Cursor<'_>) -> Result<Triple, RdfError> {
    let line = cur.line();
    let subject = match cur.peek() {
        Some('<') => Term::Iri(iri(cur)?),
        Some('_') => Term::Blank(blank(cur)?),
        _ => return Err(cur.error("expected IRI or blank node as subject")),
    };
    cur.skip_inline_ws();
    if cur.peek() != Some('<') {
        return Err(cur.error("expected IRI as predicate"));
    }
    let predicate = iri(cur)?;
    cur.skip_inline_ws();
    let object = match cur.peek() {
        Some('<') => Term::Iri(iri(cur)?),
        Some('_') => Term::Blank(blank(cur)?),
        Some('"') => Term::Literal(literal(cur)?),
        _ => return Err(cur.error("expected IRI, blank node or literal as object")),
    };
    cur.skip_inline_ws();
    cur.expect(".")?;
    Triple::new(subject, predicate, object).map_err(|e| RdfError::Syntax {
        line,
        token: String::new(),
        message: e.to_string(),
    })
}

fn iri(cur: &mut Cursor<'_>) -> Result<Iri, RdfError> {
    let line = cur.line();
    let text = cur.iri_ref()?;
    Iri::new(text.clone()).map_err(|e| RdfError::Syntax {
        line,
        token: format!("<{text}>"),
        message: e.to_string(),
    })
}

fn blank(cur: &mut Cursor<'_>) -> Result<BlankNode, RdfError> {
    let label = cur.blank_label()?;
    BlankNode::new(label).map_err(|e| cur.error(e.to_string()))
}

fn literal(cur: &mut Cursor<'_>) -> Result<Literal, RdfError> {
    let lexical = cur.string('"', false)?;
    match cur.peek() {
        Some('@') => {
            let tag = cur.language_tag()?;
            Literal::lang(lexical, &tag).map_err(|e| cur.error(e.to_string()))
        }
        Some('^') => {
            cur.expect("^^")?;
            let datatype = iri(cur)?;
            if datatype.as_str() == rdf::LANG_STRING {
                return Err(cur.error("rdf:langString literal without language tag"));
            }
            Ok(Literal::typed(lexical, datatype))
        }
        _ => Ok(Literal::string(lexical)),
    }
}

/// Canonical N-Triples text: sorted lines, each terminated by `\n`.
pub fn write_ntriples(graph: &Graph) -> String {
    let mut lines: Vec<String> = graph.iter().map(Triple::to_ntriples).collect();
    lines.sort();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_ntriples_to<W: Write>(graph: &Graph, mut writer: W) -> Result<(), RdfError> {
    writer.write_all(write_ntriples(graph).as_bytes())?;
    Ok(())
}
