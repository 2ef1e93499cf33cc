use std::fmt;

use super::RbError;

/// Highest admissible leaf index.
pub const MAX_LEAF: usize = 32;

/// A multilinear expression in the free commutative Rota–Baxter algebra.
///
/// Built through [`RBExpr::mul`], products are flattened and their factors
/// sorted by smallest leaf, so equal expressions are equal trees.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RBExpr {
    Leaf(u8),
    R(Box<RBExpr>),
    Mul(Vec<RBExpr>),
}

impl RBExpr {
    pub fn leaf(i: usize) -> Self {
        assert!((1..=MAX_LEAF).contains(&i), "leaf index {i} out of range");
        RBExpr::Leaf(i as u8)
    }

    pub fn r(e: RBExpr) -> Self {
        RBExpr::R(Box::new(e))
    }

    /// Canonical product: nested products are flattened, factors sorted,
    /// and a single factor is returned as is.
    pub fn mul(children: impl IntoIterator<Item = RBExpr>) -> Self {
        let mut flat = Vec::new();
        for c in children {
            match c {
                RBExpr::Mul(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "empty product");
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        flat.sort_by_key(|c| c.min_leaf());
        RBExpr::Mul(flat)
    }

    pub fn min_leaf(&self) -> u8 {
        match self {
            RBExpr::Leaf(i) => *i,
            RBExpr::R(c) => c.min_leaf(),
            RBExpr::Mul(cs) => cs[0].min_leaf(),
        }
    }

    /// Bitmask of leaf indices (bit `i-1` for leaf `a_i`).
    pub fn leaf_mask(&self) -> u32 {
        match self {
            RBExpr::Leaf(i) => 1 << (i - 1),
            RBExpr::R(c) => c.leaf_mask(),
            RBExpr::Mul(cs) => cs.iter().fold(0, |m, c| m | c.leaf_mask()),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            RBExpr::Leaf(i) => out.push(*i as usize),
            RBExpr::R(c) => c.collect_leaves(out),
            RBExpr::Mul(cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn arity(&self) -> usize {
        self.leaf_mask().count_ones() as usize
    }

    /// Largest number of `R` nodes on a root-to-leaf path.
    pub fn r_depth(&self) -> usize {
        match self {
            RBExpr::Leaf(_) => 0,
            RBExpr::R(c) => 1 + c.r_depth(),
            RBExpr::Mul(cs) => cs.iter().map(RBExpr::r_depth).max().unwrap_or(0),
        }
    }

    /// Leaves must be exactly `a_1..a_n`, each once.
    pub fn validate(&self) -> Result<(), RbError> {
        let leaves = self.leaves();
        let mut seen = [false; MAX_LEAF + 1];
        for &l in &leaves {
            if seen[l] {
                return Err(RbError::RepeatedLeaf(l));
            }
            seen[l] = true;
        }
        if let Some(missing) = (1..=leaves.len()).find(|&i| !seen[i]) {
            return Err(RbError::MissingLeaf(missing));
        }
        Ok(())
    }
}

impl fmt::Display for RBExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RBExpr::Leaf(i) => write!(f, "a{i}"),
            RBExpr::R(c) => write!(f, "(R {c})"),
            RBExpr::Mul(cs) => {
                f.write_str("(*")?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, RbError> {
        Err(RbError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RBExpr, RbError> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return self.err("expected a leaf index after 'a'");
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match text.parse::<usize>() {
                    Ok(i) if (1..=MAX_LEAF).contains(&i) => Ok(RBExpr::leaf(i)),
                    _ => Err(RbError::Syntax {
                        pos: start,
                        msg: format!("leaf index must be in 1..={MAX_LEAF}"),
                    }),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let node = match self.peek() {
                    Some(b'R') => {
                        self.pos += 1;
                        RBExpr::r(self.expr()?)
                    }
                    Some(b'*') => {
                        self.pos += 1;
                        let mut children = vec![self.expr()?];
                        while self.peek() != Some(b')') {
                            if self.peek().is_none() {
                                return self.err("unclosed product");
                            }
                            children.push(self.expr()?);
                        }
                        if children.len() < 2 {
                            return self.err("a product needs at least two factors");
                        }
                        RBExpr::mul(children)
                    }
                    _ => return self.err("expected 'R' or '*' after '('"),
                };
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(node)
            }
            Some(_) => self.err("expected 'a<index>' or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `expr ::= "a" INT | "(R" expr ")" | "(*" expr expr+ ")"`.
pub fn rb_parse(text: &str) -> Result<RBExpr, RbError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    e.validate()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let e = rb_parse("(* (R a1) (R a2))").unwrap();
        assert_eq!(
            e,
            RBExpr::Mul(vec![RBExpr::r(RBExpr::leaf(1)), RBExpr::r(RBExpr::leaf(2))])
        );
        let e = rb_parse("(R (* a1 a2))").unwrap();
        assert_eq!(
            e,
            RBExpr::r(RBExpr::Mul(vec![RBExpr::leaf(1), RBExpr::leaf(2)]))
        );
        assert_eq!(rb_parse("(* a1 a1)"), Err(RbError::RepeatedLeaf(1)));
    }

    #[test]
    fn canonical_order_and_flattening() {
        let a = rb_parse("(* a2 (* a3 a1))").unwrap();
        let b = rb_parse("(* a1 a2 a3)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(* a1 a2 a3)");
        assert_eq!(rb_parse("  (R(R a1 ))").unwrap().r_depth(), 2);
    }

    #[test]
    fn errors() {
        assert_eq!(rb_parse("(* a1 a3)"), Err(RbError::MissingLeaf(2)));
        assert!(matches!(rb_parse("(* a1)"), Err(RbError::Syntax { .. })));
        assert!(matches!(
            rb_parse("(Q a1)"),
            Err(RbError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(rb_parse("(R a1"), Err(RbError::Syntax { .. })));
        assert!(matches!(rb_parse("a0"), Err(RbError::Syntax { .. })));
        assert!(matches!(rb_parse("a1 a2"), Err(RbError::Syntax { .. })));
        assert!(matches!(rb_parse(""), Err(RbError::Syntax { pos: 0, .. })));
    }
}
