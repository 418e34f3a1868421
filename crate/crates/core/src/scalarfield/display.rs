use std::fmt;

use num_traits::{One, Signed};

use super::{Node, Rational, ScalarField};

// binding strength, higher binds tighter
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 5;

fn const_precedence(q: &Rational) -> u8 {
    match (q.is_integer(), q.is_negative()) {
        (true, false) => ATOM,
        (true, true) => UNARY,
        (false, _) => PRODUCT,
    }
}

fn precedence(e: &ScalarField) -> u8 {
    match e.node() {
        Node::Const(q) => const_precedence(q),
        Node::Var(_) | Node::Sqrt(_) => ATOM,
        Node::Neg(_) => UNARY,
        Node::Add(..) | Node::Sub(..) => SUM,
        Node::Mul(..) | Node::Div(..) => PRODUCT,
        // `a^b` is printed as an atom followed by an exponent
        Node::Pow(..) => ATOM - 1,
    }
}

pub(crate) fn write_exponent(f: &mut fmt::Formatter<'_>, e: &Rational) -> fmt::Result {
    if e.is_integer() && !e.is_negative() {
        write!(f, "^{}", e.numer())
    } else if e.is_integer() {
        write!(f, "^({})", e.numer())
    } else {
        write!(f, "^({}/{})", e.numer(), e.denom())
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &ScalarField, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Node::Var(a) => write!(f, "{a}"),
            Node::Neg(a) => {
                f.write_str("-")?;
                write_operand(f, a, UNARY)
            }
            Node::Add(a, b) => {
                write_operand(f, a, SUM)?;
                f.write_str("+")?;
                // "a+-b" is legal but reads badly
                write_operand(f, b, if precedence(b) == UNARY { ATOM } else { PRODUCT })
            }
            Node::Sub(a, b) => {
                write_operand(f, a, SUM)?;
                f.write_str("-")?;
                write_operand(f, b, if precedence(b) == UNARY { ATOM } else { PRODUCT })
            }
            Node::Mul(a, b) => {
                write_operand(f, a, PRODUCT)?;
                f.write_str("*")?;
                write_operand(f, b, UNARY)
            }
            Node::Div(a, b) => {
                write_operand(f, a, PRODUCT)?;
                f.write_str("/")?;
                write_operand(f, b, ATOM - 1)
            }
            Node::Pow(a, e) => {
                write_operand(f, a, ATOM)?;
                write_exponent(f, e)
            }
            Node::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}
