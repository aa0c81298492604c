//! Canonical line-based text form of a [`SeparatorResult`].

use std::fmt::Write as _;

use super::{ClosingEdge, SeparatorCase, SeparatorError, SeparatorResult};
use crate::planar::{DartKey, VertexId};

fn key(k: &DartKey) -> String {
    format!("{} {} {}", k.tail, k.head, k.copy)
}

pub fn write_record(r: &SeparatorResult) -> String {
    let mut out = String::new();
    writeln!(out, "separator case={} face={},{},{}", r.case.as_str(), r.face.tail, r.face.head, r.face.copy).unwrap();
    writeln!(out, "endpoints {} {}", r.u, r.v).unwrap();
    match &r.closing {
        ClosingEdge::Real(k) => writeln!(out, "closing real {}", key(k)),
        ClosingEdge::Augmented(k) => writeln!(out, "closing augmented {}", key(k)),
        ClosingEdge::Virtual { u_before, v_before } => {
            writeln!(out, "closing virtual {} {} slot_u {} slot_v {}", r.u, r.v, key(u_before), key(v_before))
        }
    }
    .unwrap();
    write!(out, "path {}", r.path.len()).unwrap();
    for v in &r.path {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    writeln!(out, "weights enclosed={} exterior={} total={}", r.enclosed_weight, r.exterior_weight, r.total_weight)
        .unwrap();
    out
}

fn bad(msg: &str) -> SeparatorError {
    SeparatorError::Record(msg.to_string())
}

fn nums(toks: &[&str]) -> Result<Vec<u64>, SeparatorError> {
    toks.iter().map(|t| t.parse().map_err(|_| bad(&format!("bad number `{t}`")))).collect()
}

fn dart(toks: &[&str]) -> Result<DartKey, SeparatorError> {
    match nums(toks)?.as_slice() {
        &[t, h, c] => Ok(DartKey::new(t as VertexId, h as VertexId, c as u16)),
        _ => Err(bad("dart needs three numbers")),
    }
}

fn field<'a>(tok: Option<&&'a str>, name: &str) -> Result<&'a str, SeparatorError> {
    tok.and_then(|t| t.strip_prefix(name)).and_then(|t| t.strip_prefix('=')).ok_or_else(|| bad(name))
}

pub fn parse_record(text: &str) -> Result<SeparatorResult, SeparatorError> {
    let lines: Vec<Vec<&str>> = text.lines().map(|l| l.split_whitespace().collect()).collect();
    let [head, ends, closing, path, weights] = lines.as_slice() else {
        return Err(bad("expected five lines"));
    };
    if head.first() != Some(&"separator") || head.len() != 3 {
        return Err(bad("header"));
    }
    let case = match field(head.get(1), "case")? {
        "balanced" => SeparatorCase::Balanced,
        "critical" => SeparatorCase::Critical,
        "leaf-critical" => SeparatorCase::LeafCritical,
        other => return Err(bad(&format!("unknown case `{other}`"))),
    };
    let face_parts: Vec<&str> = field(head.get(2), "face")?.split(',').collect();
    let face = dart(&face_parts)?;
    if ends.len() != 3 || ends[0] != "endpoints" {
        return Err(bad("endpoints"));
    }
    let e = nums(&ends[1..])?;
    let (u, v) = (e[0] as VertexId, e[1] as VertexId);
    let closing = match closing.as_slice() {
        ["closing", "real", rest @ ..] => ClosingEdge::Real(dart(rest)?),
        ["closing", "augmented", rest @ ..] => ClosingEdge::Augmented(dart(rest)?),
        ["closing", "virtual", _, _, "slot_u", a, b, c, "slot_v", x, y, z] => {
            ClosingEdge::Virtual { u_before: dart(&[a, b, c])?, v_before: dart(&[x, y, z])? }
        }
        _ => return Err(bad("closing")),
    };
    if path.first() != Some(&"path") || path.len() < 2 {
        return Err(bad("path"));
    }
    let p = nums(&path[1..])?;
    if p[0] as usize != p.len() - 1 {
        return Err(bad("path length"));
    }
    if weights.len() != 4 || weights[0] != "weights" {
        return Err(bad("weights"));
    }
    let w = |i: usize, name: &str| -> Result<u64, SeparatorError> {
        field(weights.get(i), name)?.parse().map_err(|_| bad(name))
    };
    Ok(SeparatorResult {
        case,
        face,
        u,
        v,
        path: p[1..].iter().map(|&x| x as VertexId).collect(),
        closing,
        enclosed_weight: w(1, "enclosed")?,
        exterior_weight: w(2, "exterior")?,
        total_weight: w(3, "total")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let r = SeparatorResult {
            case: SeparatorCase::Critical,
            face: DartKey::new(0, 3, 0),
            u: 4,
            v: 9,
            path: vec![4, 1, 9],
            closing: ClosingEdge::Virtual { u_before: DartKey::new(4, 5, 0), v_before: DartKey::new(9, 0, 1) },
            enclosed_weight: 7,
            exterior_weight: 9,
            total_weight: 16,
        };
        let text = write_record(&r);
        assert_eq!(parse_record(&text).unwrap(), r);
        assert_eq!(text.lines().count(), 5);
        assert!(parse_record("separator case=x face=0,1,0\n").is_err());
    }
}
