//! Regex front end and regex reconstruction by state elimination.

use super::{alphabet, RegularLanguage};
use crate::error::{Error, Result};

fn is_letter(c: char) -> bool {
    c.is_alphanumeric() && c != '0' && c != '1' && c != 'ε'
}

/// The letters occurring in a regex, sorted.
pub fn alphabet_of(text: &str) -> Vec<char> {
    alphabet(&text.chars().filter(|&c| is_letter(c)).collect::<String>())
}

/// Compile a regex over `alphabet` to its canonical minimal automaton.
///
/// Grammar, loosest first: `|`, `&`, concatenation, prefix `~`, postfix `*`.
/// `∅` (or `0`) is the empty language and `ε` (or `1`) the empty word.
pub fn parse_regex(text: &str, alphabet: &[char]) -> Result<RegularLanguage> {
    super::check_alphabet(alphabet)?;
    let toks: Vec<(usize, char)> = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { toks, pos: 0, alphabet, end: text.chars().count() };
    let l = p.alt()?;
    if let Some(&(i, c)) = p.toks.get(p.pos) {
        return Err(Error::Syntax { pos: i, msg: format!("unexpected {c:?}") });
    }
    Ok(l)
}

struct Parser<'a> {
    toks: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a [char],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn alt(&mut self) -> Result<RegularLanguage> {
        let mut l = self.inter()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            l = l.union(&self.inter()?)?;
        }
        Ok(l)
    }

    fn inter(&mut self) -> Result<RegularLanguage> {
        let mut l = self.concat()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            l = l.intersection(&self.concat()?)?;
        }
        Ok(l)
    }

    fn concat(&mut self) -> Result<RegularLanguage> {
        let mut l: Option<RegularLanguage> = None;
        while let Some(c) = self.peek() {
            if matches!(c, '|' | '&' | ')') {
                break;
            }
            let u = self.unary()?;
            l = Some(match l {
                None => u,
                Some(l) => l.concat(&u)?,
            });
        }
        l.ok_or_else(|| Error::Syntax { pos: self.here(), msg: "expected an expression".into() })
    }

    fn unary(&mut self) -> Result<RegularLanguage> {
        if self.peek() == Some('~') {
            self.pos += 1;
            return Ok(self.unary()?.complement());
        }
        let mut l = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            l = l.star();
        }
        Ok(l)
    }

    fn atom(&mut self) -> Result<RegularLanguage> {
        let pos = self.here();
        let Some(c) = self.peek() else {
            return Err(Error::Syntax { pos, msg: "unexpected end of input".into() });
        };
        self.pos += 1;
        match c {
            '(' => {
                let l = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(Error::Syntax { pos: self.here(), msg: "expected ')'".into() });
                }
                self.pos += 1;
                Ok(l)
            }
            '∅' | '0' => Ok(RegularLanguage::empty(self.alphabet)),
            'ε' | '1' => RegularLanguage::word(self.alphabet, ""),
            c if is_letter(c) => {
                if self.alphabet.binary_search(&c).is_err() {
                    return Err(Error::UnknownLetter(c));
                }
                RegularLanguage::word(self.alphabet, &c.to_string())
            }
            c => Err(Error::Syntax { pos, msg: format!("unexpected {c:?}") }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Re {
    Empty,
    Eps,
    Char(char),
    Cat(Vec<Re>),
    Alt(Vec<Re>),
    Star(Box<Re>),
}

fn alt(a: Re, b: Re) -> Re {
    let mut parts = Vec::new();
    for r in [a, b] {
        match r {
            Re::Empty => {}
            Re::Alt(v) => parts.extend(v),
            r => parts.push(r),
        }
    }
    parts.sort();
    parts.dedup();
    if parts.contains(&Re::Eps) && parts.iter().any(|r| matches!(r, Re::Star(_))) {
        parts.retain(|r| *r != Re::Eps);
    }
    match parts.len() {
        0 => Re::Empty,
        1 => parts.pop().unwrap(),
        _ => Re::Alt(parts),
    }
}

fn cat(a: Re, b: Re) -> Re {
    if a == Re::Empty || b == Re::Empty {
        return Re::Empty;
    }
    let mut parts = Vec::new();
    for r in [a, b] {
        match r {
            Re::Eps => {}
            Re::Cat(v) => parts.extend(v),
            r => parts.push(r),
        }
    }
    match parts.len() {
        0 => Re::Eps,
        1 => parts.pop().unwrap(),
        _ => Re::Cat(parts),
    }
}

fn star(a: Re) -> Re {
    match a {
        Re::Empty | Re::Eps => Re::Eps,
        Re::Star(x) => Re::Star(x),
        Re::Alt(v) if v.contains(&Re::Eps) => {
            let rest = v.into_iter().filter(|r| *r != Re::Eps).fold(Re::Empty, alt);
            star(rest)
        }
        a => Re::Star(Box::new(a)),
    }
}

fn show(r: &Re) -> String {
    match r {
        Re::Empty => "∅".into(),
        Re::Eps => "ε".into(),
        Re::Char(c) => c.to_string(),
        Re::Cat(v) => v
            .iter()
            .map(|x| if matches!(x, Re::Alt(_)) { format!("({})", show(x)) } else { show(x) })
            .collect(),
        Re::Alt(v) => v.iter().map(show).collect::<Vec<_>>().join("|"),
        Re::Star(x) => match **x {
            Re::Char(_) => format!("{}*", show(x)),
            _ => format!("({})*", show(x)),
        },
    }
}

pub(super) fn to_regex(l: &RegularLanguage) -> String {
    let n = l.num_states();
    // states 0..n, start n, final n+1
    let (s, f) = (n, n + 1);
    let mut r = vec![vec![Re::Empty; n + 2]; n + 2];
    for q in 0..n {
        for (a, &c) in l.alphabet().iter().enumerate() {
            let t = l.delta()[q][a];
            r[q][t] = alt(r[q][t].clone(), Re::Char(c));
        }
        if l.finals()[q] {
            r[q][f] = Re::Eps;
        }
    }
    r[s][0] = Re::Eps;
    for k in (0..n).rev() {
        let loop_k = star(r[k][k].clone());
        let live: Vec<usize> = (0..n + 2).filter(|&i| i != k).collect();
        for &i in &live {
            if r[i][k] == Re::Empty {
                continue;
            }
            for &j in &live {
                if r[k][j] == Re::Empty {
                    continue;
                }
                let path = cat(cat(r[i][k].clone(), loop_k.clone()), r[k][j].clone());
                r[i][j] = alt(r[i][j].clone(), path);
            }
        }
        for i in 0..n + 2 {
            r[i][k] = Re::Empty;
            r[k][i] = Re::Empty;
        }
    }
    show(&r[s][f])
}
