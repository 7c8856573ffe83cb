use super::{NodePredicate, PredKind, QueryError, Trpq};
use crate::graph::{valid_name, EdgeLabel, NodeId};
use crate::interval::{Interval, TimePoint};

/// Parses a query in the concrete syntax described in the module docs.
/// Whitespace is insignificant. Error columns are 1-based.
pub fn parse_query(text: &str) -> Result<Trpq, QueryError> {
    let mut p = Parser { src: text, pos: 0 };
    let q = p.union()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected input after query"));
    }
    Ok(q)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> QueryError {
        QueryError::Syntax { column: self.column(), message: message.into() }
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), QueryError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn union(&mut self) -> Result<Trpq, QueryError> {
        let mut lhs = self.join()?;
        while self.eat("+") {
            let rhs = self.join()?;
            lhs = Trpq::union(lhs, rhs);
        }
        Ok(lhs)
    }

    fn join(&mut self) -> Result<Trpq, QueryError> {
        let mut lhs = self.postfix()?;
        while self.eat("/") {
            let rhs = self.postfix()?;
            lhs = Trpq::join(lhs, rhs);
        }
        Ok(lhs)
    }

    fn postfix(&mut self) -> Result<Trpq, QueryError> {
        let mut q = self.atom()?;
        loop {
            self.skip_ws();
            let column = self.column();
            if self.eat("^-") {
                if !q.is_edge() {
                    return Err(QueryError::NotAnEdge { column });
                }
                q = Trpq::Inverse(Box::new(q));
            } else if self.eat("[") {
                let min = self.natural()?;
                self.expect(",")?;
                if self.eat("_") {
                    self.expect("]")?;
                    q = Trpq::repeat_unbounded(q, min);
                } else {
                    let max = self.natural()?;
                    self.expect("]")?;
                    if min > max {
                        return Err(QueryError::BadRepetition { column, min, max });
                    }
                    q = Trpq::Repeat { inner: Box::new(q), min, max };
                }
            } else {
                return Ok(q);
            }
        }
    }

    fn atom(&mut self) -> Result<Trpq, QueryError> {
        let column = {
            self.skip_ws();
            self.column()
        };
        match self.peek() {
            Some('?') => {
                self.pos += 1;
                self.expect("(")?;
                let inner = self.union()?;
                self.expect(")")?;
                Ok(Trpq::test(inner))
            }
            Some('!') if !self.rest().starts_with("!=") => {
                self.pos += 1;
                let inner = self.atom()?;
                if !inner.is_node() {
                    return Err(QueryError::NotANode { column });
                }
                Ok(Trpq::Not(Box::new(inner)))
            }
            Some('(') => {
                self.pos += 1;
                if self.eat("<=") {
                    let k = self.number()?;
                    self.expect(")")?;
                    Ok(Trpq::LeqTime(k))
                } else if self.eat("!=") {
                    let target = self.name()?;
                    self.expect(")")?;
                    Ok(Trpq::Pred(NodePredicate { kind: PredKind::NotEquals, target: NodeId::new(&target) }))
                } else if self.eat("=") {
                    let target = self.name()?;
                    self.expect(")")?;
                    Ok(Trpq::Pred(NodePredicate { kind: PredKind::Equals, target: NodeId::new(&target) }))
                } else {
                    let inner = self.union()?;
                    self.expect(")")?;
                    Ok(inner)
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.name()?;
                if name == "T" && matches!(self.peek(), Some('[') | Some('(')) {
                    return Ok(Trpq::TimeNav(self.interval()?));
                }
                Ok(Trpq::Label(EdgeLabel::new(&name)))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of query")),
        }
    }

    fn name(&mut self) -> Result<String, QueryError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        let name = &rest[..len];
        if !valid_name(name) {
            return Err(self.error("expected a name"));
        }
        self.pos += len;
        Ok(name.to_string())
    }

    fn natural(&mut self) -> Result<u32, QueryError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let value = rest[..len].parse().map_err(|_| self.error("expected a natural number"))?;
        self.pos += len;
        Ok(value)
    }

    fn number(&mut self) -> Result<TimePoint, QueryError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '-' | '+' | '/' | '.')))
            .unwrap_or(rest.len());
        let value = rest[..len].parse().map_err(|e| self.error(format!("{e}")))?;
        self.pos += len;
        Ok(value)
    }

    fn interval(&mut self) -> Result<Interval, QueryError> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find([']', ')']).ok_or_else(|| self.error("unterminated interval"))?;
        let interval = rest[..=end].parse().map_err(|e| self.error(format!("{e}")))?;
        self.pos += end + 1;
        Ok(interval)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Trpq {
        parse_query(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn q1_parses_left_nested() {
        let q = p("T[3,5] / attends / attends^-");
        let expected = Trpq::join(
            Trpq::join(Trpq::TimeNav(Interval::closed(3, 5).unwrap()), Trpq::label("attends")),
            Trpq::inverse(Trpq::label("attends")).unwrap(),
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn q3_parses() {
        let q = p("attends^- / (=Alice) / T[3,5] / attends");
        assert_eq!(q.to_string(), "attends^-/(=Alice)/T[3,5]/attends");
    }

    #[test]
    fn closure_over_navigation() {
        let q = p("e/(T[2,2])[1,_]");
        let expected = Trpq::join(
            Trpq::label("e"),
            Trpq::repeat_unbounded(Trpq::TimeNav(Interval::point(2)), 1),
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn node_forms() {
        assert_eq!(p("!(=a)"), Trpq::not(Trpq::eq("a")).unwrap());
        assert_eq!(p("!((!=a))"), Trpq::not(Trpq::ne("a")).unwrap());
        assert_eq!(p("?(e/f)"), Trpq::test(p("e/f")));
        assert_eq!(p("(<=3/2)"), Trpq::LeqTime(TimePoint::ratio(3, 2)));
        assert_eq!(p("!(!(?(e)))").depth(), 4);
    }

    #[test]
    fn dense_navigation_intervals() {
        assert_eq!(p("T(-7,0]").to_string(), "T(-7,0]");
        assert_eq!(p("T[1/2,0.75)").to_string(), "T[1/2,3/4)");
    }

    #[test]
    fn errors_report_columns() {
        assert!(matches!(parse_query("a/"), Err(QueryError::Syntax { column: 3, .. })));
        assert!(matches!(parse_query("!(e)"), Err(QueryError::NotANode { column: 1 })));
        assert!(matches!(parse_query("a/(=b)^-"), Err(QueryError::NotAnEdge { column: 7 })));
        assert!(matches!(parse_query("e[3,2]"), Err(QueryError::BadRepetition { min: 3, max: 2, .. })));
        assert!(matches!(parse_query("a b"), Err(QueryError::Syntax { column: 3, .. })));
        assert!(parse_query("T[2,1]").is_err());
        assert!(parse_query("").is_err());
    }

    #[test]
    fn repetition_allows_zero_minimum() {
        assert_eq!(p("e[0,_]"), Trpq::repeat_unbounded(Trpq::label("e"), 0));
        assert_eq!(p("e^-^-[0,2]").to_string(), "e^-^-[0,2]");
    }
}
