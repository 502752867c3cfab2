//! Text formats for presentations and curve systems.
//!
//! Both formats ignore blank lines and anything after `#`.

use mcg_core::abelian::Presentation;
use mcg_core::curves::CurveSystem;
use mcg_core::symplectic::{HomClass, IntMatrix};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error(transparent)]
    Core(#[from] mcg_core::Error),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn ints(line: usize, tokens: &[&str]) -> Result<Vec<i64>, FormatError> {
    tokens
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| syntax(line, format!("not an integer: {t:?}")))
        })
        .collect()
}

/// `generators n`, then one relator per line as signed generator indices.
pub fn parse_presentation(text: &str) -> Result<Presentation, FormatError> {
    let mut lines = content_lines(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated("missing `generators n`".into()))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["generators", n] => n
            .parse::<usize>()
            .map_err(|_| syntax(no, "bad generator count"))?,
        _ => return Err(syntax(no, "expected `generators n`")),
    };
    let mut relators = Vec::new();
    for (no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let word = ints(no, &tokens)?;
        if let Some(&bad) = word
            .iter()
            .find(|&&x| x == 0 || x.unsigned_abs() as usize > n)
        {
            return Err(syntax(no, format!("generator {bad} out of range 1..={n}")));
        }
        relators.push(word);
    }
    Ok(Presentation::new(n, relators)?)
}

/// `genus g count k`, then `k` lines `label c1 .. c2g`, then a `k x k`
/// block of expected `|pairing|` values.
pub fn parse_curve_system(text: &str) -> Result<CurveSystem, FormatError> {
    let mut lines = content_lines(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated("missing `genus g count k`".into()))?;
    let (g, k) = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["genus", g, "count", k] => (
            g.parse::<usize>().map_err(|_| syntax(no, "bad genus"))?,
            k.parse::<usize>().map_err(|_| syntax(no, "bad count"))?,
        ),
        _ => return Err(syntax(no, "expected `genus g count k`")),
    };
    let mut names = Vec::with_capacity(k);
    let mut classes = Vec::with_capacity(k);
    for i in 0..k {
        let (no, line) = lines
            .next()
            .ok_or_else(|| FormatError::Truncated(format!("class {} of {k}", i + 1)))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 * g + 1 {
            return Err(syntax(
                no,
                format!("expected a label and {} coordinates", 2 * g),
            ));
        }
        names.push(tokens[0].to_string());
        classes.push(HomClass::from_i64(g, &ints(no, &tokens[1..])?)?);
    }
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let (no, line) = lines
            .next()
            .ok_or_else(|| FormatError::Truncated(format!("pattern row {} of {k}", i + 1)))?;
        let row = ints(no, &line.split_whitespace().collect::<Vec<_>>())?;
        if row.len() != k {
            return Err(syntax(no, format!("expected {k} pattern entries")));
        }
        rows.push(row);
    }
    if let Some((no, _)) = lines.next() {
        return Err(syntax(no, "trailing content"));
    }
    let pattern = if k == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(&rows)?
    };
    Ok(CurveSystem::new(g, names, classes, pattern, true)?)
}

/// Inverse of [`parse_curve_system`].
pub fn write_curve_system(sys: &CurveSystem) -> String {
    let mut out = format!("genus {} count {}\n", sys.genus(), sys.len());
    for (name, c) in sys.names().iter().zip(sys.classes()) {
        out.push_str(name);
        for x in c.coords() {
            out.push_str(&format!(" {x}"));
        }
        out.push('\n');
    }
    let p = sys.expected_pattern();
    for i in 0..sys.len() {
        let row: Vec<String> = (0..sys.len()).map(|j| p[(i, j)].to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mcg_core::abelian::mod1_presentation;
    use mcg_core::curves::pants_system;

    #[test]
    fn presentation_roundtrip() {
        let p = parse_presentation(
            "# Mod_1\ngenerators 2\n1 2 1 -2 -1 -2\n1 2 1 2 1 2 1 2 1 2 1 2 # (xy)^6\n",
        )
        .unwrap();
        assert_eq!(p, mod1_presentation());
    }

    #[test]
    fn presentation_errors() {
        assert!(matches!(
            parse_presentation(""),
            Err(FormatError::Truncated(_))
        ));
        assert!(matches!(
            parse_presentation("gens 2"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("generators 2\n1 3"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("generators 2\n1 x"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn curve_system_roundtrip() {
        let sys = pants_system(3).unwrap();
        let text = write_curve_system(&sys);
        let back = parse_curve_system(&text).unwrap();
        assert_eq!(back.classes(), sys.classes());
        assert_eq!(back.expected_pattern(), sys.expected_pattern());
    }

    #[test]
    fn curve_system_errors() {
        assert!(parse_curve_system("genus 1 count 1\na 1 0\n").is_err());
        assert!(parse_curve_system("genus 1 count 1\na 1\n0\n").is_err());
        assert!(parse_curve_system("genus 1 count 1\na 1 0\n0\n0\n").is_err());
        assert!(parse_curve_system("genus 1 count 1\na 1 0\n0\n").is_ok());
    }
}
