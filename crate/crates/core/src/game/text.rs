//! Text codec for games and sums.
//!
//! ```text
//! sum  := term ('+' term)*
//! term := game | INT? ('↑' | '↓')
//! game := '0' | '*' INT? | '{' list '|' list '}'
//! list := (game (',' game)*)?
//! ```
//!
//! Whitespace is ignored on input and never emitted. A braced term whose
//! options are all nimbers parses to a superstar component; any deeper
//! nesting parses to an explicit tree. `3↑` stands for three copies of
//! `{0|*}`; `^` and `v` are accepted for `↑` and `↓`.

use std::sync::Arc;

use super::{Component, Game, SumPosition};
use crate::error::{Error, Result};
use crate::nimber::Nimber;
use crate::superstar::{StarValue, Superstar};

pub fn parse_sum(input: &str) -> Result<SumPosition> {
    let mut p = Parser::new(input);
    let mut components = Vec::new();
    loop {
        components.extend(p.term()?);
        if !p.eat('+') {
            break;
        }
    }
    p.finish()?;
    // `0` as a whole sum means the empty sum.
    components.retain(|c| !matches!(c, Component::Nimber(n) if n.is_zero()));
    Ok(SumPosition::new(components))
}

pub fn parse_game(input: &str) -> Result<Game> {
    let mut p = Parser::new(input);
    let g = p.game()?;
    p.finish()?;
    Ok(g.into_game())
}

/// Parses a sum in which every term is a nimber or a superstar.
pub fn parse_star_sum(input: &str) -> Result<Vec<StarValue>> {
    parse_sum(input)?
        .into_components()
        .into_iter()
        .map(|c| match c {
            Component::Nimber(n) => Ok(StarValue::Nimber(n)),
            Component::Superstar(s) => Ok(StarValue::Star(Arc::unwrap_or_clone(s))),
            other => Err(Error::parse(format!("`{other}` is not a superstar"))),
        })
        .collect()
}

pub fn format_star_sum(values: &[StarValue]) -> String {
    SumPosition::new(values.iter().cloned().map(Component::from)).to_string()
}

enum Parsed {
    Nimber(u64),
    Braced(Vec<Parsed>, Vec<Parsed>),
}

impl Parsed {
    fn into_game(self) -> Game {
        match self {
            Parsed::Nimber(n) => Game::nimber(n),
            Parsed::Braced(l, r) => {
                Game::new(l.into_iter().map(Parsed::into_game), r.into_iter().map(Parsed::into_game))
            }
        }
    }

    fn nimber_side(side: &[Parsed]) -> Option<Vec<u64>> {
        side.iter()
            .map(|p| match p {
                Parsed::Nimber(n) => Some(*n),
                Parsed::Braced(..) => None,
            })
            .collect()
    }

    fn into_component(self) -> Component {
        match self {
            Parsed::Nimber(n) => Component::Nimber(Nimber(n)),
            Parsed::Braced(l, r) => match (Parsed::nimber_side(&l), Parsed::nimber_side(&r)) {
                (Some(ls), Some(rs)) => match Superstar::new(ls, rs) {
                    Ok(s) => Component::from(s),
                    Err(_) => Component::Nimber(Nimber(0)),
                },
                _ => Component::from_game(Parsed::Braced(l, r).into_game()),
            },
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Parser {
        Parser { chars: input.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn error(&self, what: &str) -> Error {
        let found = self.peek().map_or("end of input".to_string(), |c| format!("`{c}`"));
        Error::parse(format!("{what} at offset {}, found {found}", self.pos))
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.chars.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn term(&mut self) -> Result<Vec<Component>> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let unit = match self.peek() {
            Some('↑' | '^') => Game::up(),
            Some('↓' | 'v') => Game::down(),
            _ => {
                self.pos = start;
                return Ok(vec![self.game()?.into_component()]);
            }
        };
        let digits: String = self.chars[start..self.pos].iter().collect();
        self.pos += 1;
        let count: usize = if digits.is_empty() {
            1
        } else {
            digits.parse().map_err(|e| Error::parse(format!("bad arrow count `{digits}`: {e}")))?
        };
        Ok(vec![Component::Tree(unit); count])
    }

    fn game(&mut self) -> Result<Parsed> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(Parsed::Nimber(0))
            }
            Some('*') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Ok(Parsed::Nimber(1));
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                digits.parse().map(Parsed::Nimber).map_err(|e| Error::parse(format!("bad nimber `*{digits}`: {e}")))
            }
            Some('{') => {
                self.pos += 1;
                let left = self.list('|')?;
                self.expect('|')?;
                let right = self.list('}')?;
                self.expect('}')?;
                Ok(Parsed::Braced(left, right))
            }
            _ => Err(self.error("expected `0`, `*N` or `{`")),
        }
    }

    fn list(&mut self, end: char) -> Result<Vec<Parsed>> {
        let mut items = Vec::new();
        if self.peek() == Some(end) {
            return Ok(items);
        }
        loop {
            items.push(self.game()?);
            if !self.eat(',') {
                break;
            }
        }
        Ok(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_figure_one() {
        let s = parse_sum("{0, *2, *4 | *, *2} + *4").unwrap();
        assert_eq!(s.to_string(), "{0,*2,*4|*1,*2}+*4");
        assert!(matches!(s.components()[0], Component::Superstar(_)));
        assert_eq!(s.components()[1], Component::Nimber(Nimber(4)));
    }

    #[test]
    fn nested_terms_become_trees() {
        let s = parse_sum("{0|{0|*}}").unwrap();
        assert!(matches!(s.components()[0], Component::Tree(_)));
        assert_eq!(s.to_string(), "{0|{0|*1}}");
        let g = parse_game("{{0|*},*|0}").unwrap();
        assert_eq!(g.to_string(), "{*1,{0|*1}|0}");
    }

    #[test]
    fn zero_and_empty_braces() {
        assert!(parse_sum("0").unwrap().is_empty());
        assert!(parse_sum("{|}").unwrap().is_empty());
        assert!(parse_sum("0+*2").unwrap().to_string() == "*2");
        assert!(parse_game("{|}").unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "+", "*2+", "{0|", "{0,|1}", "{0|*}}", "3", "*x"] {
            assert!(matches!(parse_sum(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn arrows_expand_to_copies() {
        let s = parse_sum("2↑+*+{*2|0}").unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.components()[0], Component::Tree(Game::up()));
        assert_eq!(parse_sum("↓").unwrap().components()[0], Component::Tree(Game::down()));
        assert_eq!(parse_sum("^+v").unwrap().len(), 2);
        assert!(parse_sum("0↑").unwrap().is_empty());
        assert!(parse_sum("2").is_err());
    }

    #[test]
    fn star_sum_rejects_trees() {
        assert!(parse_star_sum("{0|{0|*}}").is_err());
        assert_eq!(parse_star_sum("{*2|*3}+*1").unwrap().len(), 2);
    }

    fn arb_game() -> impl Strategy<Value = Game> {
        let leaf = (0u64..4).prop_map(Game::nimber);
        leaf.prop_recursive(3, 24, 3, |inner| {
            (proptest::collection::vec(inner.clone(), 0..3), proptest::collection::vec(inner, 0..3))
                .prop_map(|(l, r)| Game::new(l, r))
        })
    }

    proptest! {
        #[test]
        fn game_text_round_trips(g in arb_game()) {
            let text = g.to_string();
            prop_assert_eq!(parse_game(&text).unwrap(), g);
        }
    }
}
