use super::{BallComplex, BallError, BallReal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Exp,
    Log,
    Pow,
    Atan2,
    Abs,
}

impl ElementaryOp {
    pub fn name(self) -> &'static str {
        match self {
            ElementaryOp::Add => "add",
            ElementaryOp::Sub => "sub",
            ElementaryOp::Mul => "mul",
            ElementaryOp::Div => "div",
            ElementaryOp::Exp => "exp",
            ElementaryOp::Log => "log",
            ElementaryOp::Pow => "pow",
            ElementaryOp::Atan2 => "atan2",
            ElementaryOp::Abs => "abs",
        }
    }

    fn arity(self) -> usize {
        match self {
            ElementaryOp::Exp | ElementaryOp::Log | ElementaryOp::Abs => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BallValue {
    Real(BallReal),
    Complex(BallComplex),
}

impl BallValue {
    fn to_complex(&self) -> BallComplex {
        match self {
            BallValue::Real(x) => BallComplex::from_real(x.clone()),
            BallValue::Complex(z) => z.clone(),
        }
    }

    pub fn as_real(&self) -> Option<&BallReal> {
        match self {
            BallValue::Real(x) => Some(x),
            BallValue::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Option<&BallComplex> {
        match self {
            BallValue::Complex(z) => Some(z),
            BallValue::Real(_) => None,
        }
    }
}

/// Apply one elementary operation to real or complex balls.
///
/// Mixed real/complex arguments are promoted to complex. `atan2` takes two
/// real balls `(y, x)`; `abs` of a complex ball is real.
pub fn ball_elementary(op: ElementaryOp, args: &[BallValue]) -> Result<BallValue, BallError> {
    if args.len() != op.arity() {
        return Err(BallError::Arity { op: op.name(), expected: op.arity(), got: args.len() });
    }
    let all_real = args.iter().all(|a| matches!(a, BallValue::Real(_)));
    if all_real {
        let x = args[0].as_real().unwrap();
        let y = args.get(1).and_then(|a| a.as_real());
        return Ok(BallValue::Real(match op {
            ElementaryOp::Add => x.add(y.unwrap()),
            ElementaryOp::Sub => x.sub(y.unwrap()),
            ElementaryOp::Mul => x.mul(y.unwrap()),
            ElementaryOp::Div => x.div(y.unwrap())?,
            ElementaryOp::Exp => x.exp(),
            ElementaryOp::Log => x.ln()?,
            ElementaryOp::Pow => x.pow(y.unwrap())?,
            ElementaryOp::Atan2 => BallReal::atan2(x, y.unwrap())?,
            ElementaryOp::Abs => x.abs(),
        }));
    }
    let z = args[0].to_complex();
    let w = args.get(1).map(|a| a.to_complex());
    Ok(match op {
        ElementaryOp::Add => BallValue::Complex(z.add(w.as_ref().unwrap())),
        ElementaryOp::Sub => BallValue::Complex(z.sub(w.as_ref().unwrap())),
        ElementaryOp::Mul => BallValue::Complex(z.mul(w.as_ref().unwrap())),
        ElementaryOp::Div => BallValue::Complex(z.div(w.as_ref().unwrap())?),
        ElementaryOp::Exp => BallValue::Complex(z.exp()),
        ElementaryOp::Log => BallValue::Complex(z.ln()?),
        ElementaryOp::Pow => BallValue::Complex(z.pow(w.as_ref().unwrap())?),
        ElementaryOp::Atan2 => return Err(BallError::Domain { op: "atan2" }),
        ElementaryOp::Abs => BallValue::Real(z.abs()),
    })
}
