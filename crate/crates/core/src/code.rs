//! Text form of Gauss diagrams.
//!
//! ```text
//! diagram   := [ "L:" ] component ( ";" component )*
//! component := "()" | token+
//! token     := ("O"|"U") integer ("+"|"-")
//! ```
//!
//! Whitespace is ignored. The empty string is the empty link, `()` a
//! chordless circle. In a long code the first component is the open strand
//! and may be empty (`L:` is the long unknot).

use thiserror::Error;

use crate::gauss::{DiagramError, Endpoint, GaussDiagram, Kind, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("a long code has exactly one open component")]
    MultipleOpen,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        offset,
        message: message.into(),
    }
}

pub fn parse_gauss(text: &str) -> Result<GaussDiagram, ParseError> {
    let compact: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut rest = &compact[..];
    let kind = if rest.len() >= 2 && rest[0].1 == 'L' && rest[1].1 == ':' {
        rest = &rest[2..];
        Kind::Long
    } else {
        Kind::Round
    };
    if kind == Kind::Round && rest.is_empty() {
        return Ok(GaussDiagram::empty());
    }

    let mut components = Vec::new();
    let mut signs = Vec::new();
    for (index, piece) in rest.split(|&(_, c)| c == ';').enumerate() {
        let at = piece.first().map(|p| p.0).unwrap_or(text.len());
        if piece.iter().any(|&(_, c)| c == ':') {
            return Err(ParseError::MultipleOpen);
        }
        let chars: String = piece.iter().map(|p| p.1).collect();
        if chars == "()" {
            components.push(Vec::new());
            continue;
        }
        if chars.is_empty() {
            if kind == Kind::Long && index == 0 {
                components.push(Vec::new());
                continue;
            }
            return Err(syntax(
                at,
                "empty component (write `()` for a chordless circle)",
            ));
        }
        components.push(parse_component(piece, &mut signs)?);
    }
    Ok(GaussDiagram::from_parts(kind, components, &signs)?)
}

fn parse_component(
    piece: &[(usize, char)],
    signs: &mut Vec<(u32, Sign)>,
) -> Result<Vec<Endpoint>, ParseError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < piece.len() {
        let (at, c) = piece[i];
        let role = match c {
            'O' => Role::Over,
            'U' => Role::Under,
            other => return Err(syntax(at, format!("expected `O` or `U`, found `{other}`"))),
        };
        i += 1;
        let start = i;
        while i < piece.len() && piece[i].1.is_ascii_digit() {
            i += 1;
        }
        if start == i {
            let off = piece.get(i).map(|p| p.0).unwrap_or(at + 1);
            return Err(syntax(off, "expected a crossing number"));
        }
        let digits: String = piece[start..i].iter().map(|p| p.1).collect();
        let id: u32 = digits.parse().map_err(|_| {
            syntax(
                piece[start].0,
                format!("crossing number `{digits}` out of range"),
            )
        })?;
        let sign = match piece.get(i).map(|p| p.1) {
            Some('+') => Sign::Pos,
            Some('-') => Sign::Neg,
            _ => {
                let off = piece.get(i).map(|p| p.0).unwrap_or(at + 1);
                return Err(syntax(off, "expected `+` or `-`"));
            }
        };
        i += 1;
        signs.push((id, sign));
        out.push(Endpoint { id, role });
    }
    Ok(out)
}

pub fn render_gauss(d: &GaussDiagram) -> String {
    let mut out = String::new();
    if d.is_long() {
        out.push_str("L:");
    }
    for (c, comp) in d.components().iter().enumerate() {
        if c > 0 {
            out.push(';');
        }
        if comp.is_empty() && d.is_closed(c) {
            out.push_str("()");
        }
        for e in comp {
            out.push(e.role.symbol());
            out.push_str(&e.id.to_string());
            out.push(d.sign(e.id).symbol());
        }
    }
    out
}
