use alloc::vec;
use alloc::vec::Vec;

use super::Colouring;

/// A square-free word over `{0, 1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThueSequence(Vec<u8>);

impl ThueSequence {
    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn image(symbol: u8) -> &'static [u8] {
    match symbol {
        0 => &[0, 1, 2],
        1 => &[0, 2],
        2 => &[1],
        _ => unreachable!("ternary alphabet"),
    }
}

/// Prefix of length `n` of the fixed point of `0 -> 012, 1 -> 02, 2 -> 1`.
pub fn thue_sequence(n: usize) -> ThueSequence {
    // the word is its own image, so it can be grown by expanding its prefix
    let mut word: Vec<u8> = vec![0, 1, 2];
    let mut next = 1;
    while word.len() < n {
        let s = word[next];
        word.extend_from_slice(image(s));
        next += 1;
    }
    word.truncate(n);
    ThueSequence(word)
}

/// Nonrepetitive colouring of the path `0 - 1 - ... - (n-1)` from a Thue
/// sequence, over a palette of three colours.
pub fn colour_path(n: usize) -> Colouring {
    let colours = thue_sequence(n).0.into_iter().map(usize::from).collect();
    Colouring::new(colours, 3).expect("ternary symbols fit a palette of three")
}

/// Whether `word` contains no factor `XX`. Quadratic time: for each
/// half-length `l` a square is a run of `l` positions with `w[i] == w[i + l]`.
pub fn is_square_free<T: PartialEq>(word: &[T]) -> bool {
    for l in 1..=word.len() / 2 {
        let mut run = 0;
        for i in 0..word.len() - l {
            if word[i] == word[i + l] {
                run += 1;
                if run == l {
                    return false;
                }
            } else {
                run = 0;
            }
        }
    }
    true
}
