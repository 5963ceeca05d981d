//! Random expression trees evaluated through the ball operations.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use zetabound::precision::{ball_elementary, BallReal, BallValue, ElementaryOp};

#[derive(Debug, Clone)]
pub enum Tree {
    Leaf(i64, u64),
    Unary(ElementaryOp, Box<Tree>),
    Binary(ElementaryOp, Box<Tree>, Box<Tree>),
}

pub fn random_tree(rng: &mut ChaCha8Rng, depth: u32) -> Tree {
    if depth == 0 || rng.gen_bool(0.25) {
        return Tree::Leaf(rng.gen_range(-50..=50), rng.gen_range(1..=17));
    }
    match rng.gen_range(0..8) {
        0 => Tree::Unary(ElementaryOp::Exp, Box::new(random_tree(rng, depth - 1))),
        1 => Tree::Unary(ElementaryOp::Log, Box::new(random_tree(rng, depth - 1))),
        2 => Tree::Unary(ElementaryOp::Abs, Box::new(random_tree(rng, depth - 1))),
        k => {
            let op = [ElementaryOp::Add, ElementaryOp::Sub, ElementaryOp::Mul, ElementaryOp::Div, ElementaryOp::Atan2][k - 3];
            Tree::Binary(op, Box::new(random_tree(rng, depth - 1)), Box::new(random_tree(rng, depth - 1)))
        }
    }
}

pub fn eval(tree: &Tree, prec: u32) -> Option<BallReal> {
    let v = match tree {
        Tree::Leaf(p, q) => BallReal::from_rational(&Rational::from((*p, *q)), prec),
        Tree::Unary(op, a) => {
            let mut x = eval(a, prec)?;
            if *op == ElementaryOp::Exp && x.mag_upper() > 30 {
                x = x.mul_f64(1e-3);
            }
            if *op == ElementaryOp::Log {
                x = x.abs().add_f64(0.5);
            }
            let r = ball_elementary(*op, &[BallValue::Real(x)]).ok()?;
            r.as_real()?.clone()
        }
        Tree::Binary(op, a, b) => {
            let x = eval(a, prec)?;
            let y = eval(b, prec)?;
            let r = ball_elementary(*op, &[BallValue::Real(x), BallValue::Real(y)]).ok()?;
            r.as_real()?.clone()
        }
    };
    if v.mag_upper() > 1e30 {
        return None;
    }
    Some(v)
}
