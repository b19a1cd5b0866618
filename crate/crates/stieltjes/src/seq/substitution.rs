use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::max_work;

/// A substitution (alphabet morphism) together with a +/-1 coding and a
/// prolongable seed letter. Iterating the rules from the seed and applying
/// the coding generates an automatic +/-1 sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionSystem {
    letters: Vec<char>,
    rules: Vec<Vec<u8>>,
    coding: Vec<i8>,
    seed: u8,
}

impl SubstitutionSystem {
    /// Build and validate a system from letter-indexed pieces.
    pub fn new(
        letters: Vec<char>,
        rules: BTreeMap<char, Vec<char>>,
        coding: BTreeMap<char, i8>,
        seed: char,
    ) -> Result<SubstitutionSystem> {
        let bad = |msg: String| Error::InvalidSystem(msg);
        if letters.is_empty() {
            return Err(bad("no letters".into()));
        }
        if letters.len() > 255 {
            return Err(bad("more than 255 letters".into()));
        }
        let index = |ch: char| -> Result<u8> {
            letters
                .iter()
                .position(|&l| l == ch)
                .map(|i| i as u8)
                .ok_or_else(|| bad(format!("unknown letter `{ch}`")))
        };
        for (i, l) in letters.iter().enumerate() {
            if letters[..i].contains(l) {
                return Err(bad(format!("duplicate letter `{l}`")));
            }
        }
        let mut rule_vec = Vec::with_capacity(letters.len());
        for &l in &letters {
            let image = rules
                .get(&l)
                .ok_or_else(|| bad(format!("no rule for letter `{l}`")))?;
            if image.is_empty() {
                return Err(bad(format!("empty rule image for `{l}`")));
            }
            rule_vec.push(image.iter().map(|&c| index(c)).collect::<Result<Vec<_>>>()?);
        }
        let mut code_vec = Vec::with_capacity(letters.len());
        for &l in &letters {
            let v = *coding
                .get(&l)
                .ok_or_else(|| bad(format!("no coding for letter `{l}`")))?;
            if v != 1 && v != -1 {
                return Err(bad(format!("coding of `{l}` must be 1 or -1, got {v}")));
            }
            code_vec.push(v);
        }
        let seed_ix = index(seed)?;
        let seed_rule = &rule_vec[seed_ix as usize];
        if seed_rule[0] != seed_ix {
            return Err(bad(format!("rule for seed `{seed}` must start with `{seed}`")));
        }
        if seed_rule.len() < 2 {
            return Err(bad(format!("rule for seed `{seed}` must have length at least 2")));
        }
        Ok(SubstitutionSystem { letters, rules: rule_vec, coding: code_vec, seed: seed_ix })
    }

    /// Parse the plain-text config format:
    ///
    /// ```text
    /// letters: a b c d
    /// rule: a -> a b
    /// code: a = 1
    /// seed: a
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<SubstitutionSystem> {
        let bad = |msg: String| Error::Parse(msg);
        let mut letters: Option<Vec<char>> = None;
        let mut rules: BTreeMap<char, Vec<char>> = BTreeMap::new();
        let mut coding: BTreeMap<char, i8> = BTreeMap::new();
        let mut seed: Option<char> = None;
        let one_char = |tok: &str| -> Result<char> {
            let mut it = tok.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(bad(format!("letters must be single characters, got `{tok}`"))),
            }
        };
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `key: value`, got `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "letters" => {
                    let ls = value
                        .split_whitespace()
                        .map(one_char)
                        .collect::<Result<Vec<_>>>()?;
                    letters = Some(ls);
                }
                "rule" => {
                    let (lhs, rhs) = value
                        .split_once("->")
                        .ok_or_else(|| bad(format!("rule needs `->`: `{line}`")))?;
                    let l = one_char(lhs.trim())?;
                    let image = rhs
                        .split_whitespace()
                        .map(one_char)
                        .collect::<Result<Vec<_>>>()?;
                    rules.insert(l, image);
                }
                "code" => {
                    let (lhs, rhs) = value
                        .split_once('=')
                        .ok_or_else(|| bad(format!("code needs `=`: `{line}`")))?;
                    let l = one_char(lhs.trim())?;
                    let v: i8 = rhs
                        .trim()
                        .parse()
                        .map_err(|_| bad(format!("bad coding value `{}`", rhs.trim())))?;
                    coding.insert(l, v);
                }
                "seed" => seed = Some(one_char(value)?),
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        let letters = letters.ok_or_else(|| bad("missing `letters:` line".into()))?;
        let seed = seed.ok_or_else(|| bad("missing `seed:` line".into()))?;
        SubstitutionSystem::new(letters, rules, coding, seed)
    }

    /// Render back into the config format parsed by [`SubstitutionSystem::parse`].
    pub fn to_config(&self) -> String {
        let mut out = String::new();
        out.push_str("letters:");
        for l in &self.letters {
            out.push(' ');
            out.push(*l);
        }
        out.push('\n');
        for (i, image) in self.rules.iter().enumerate() {
            out.push_str(&format!("rule: {} ->", self.letters[i]));
            for &im in image {
                out.push(' ');
                out.push(self.letters[im as usize]);
            }
            out.push('\n');
        }
        for (i, v) in self.coding.iter().enumerate() {
            out.push_str(&format!("code: {} = {v}\n", self.letters[i]));
        }
        out.push_str(&format!("seed: {}\n", self.letters[self.seed as usize]));
        out
    }

    /// The paperfolding system a->ab, b->cb, c->ad, d->cd with a,b -> 1 and
    /// c,d -> -1, seeded at a.
    pub fn paperfolding() -> SubstitutionSystem {
        SubstitutionSystem::parse(
            "letters: a b c d\n\
             rule: a -> a b\n\
             rule: b -> c b\n\
             rule: c -> a d\n\
             rule: d -> c d\n\
             code: a = 1\ncode: b = 1\ncode: c = -1\ncode: d = -1\n\
             seed: a\n",
        )
        .expect("builtin system is valid")
    }

    /// The Rudin-Shapiro system a->ab, b->ac, c->db, d->dc with the same coding.
    pub fn rudin_shapiro() -> SubstitutionSystem {
        SubstitutionSystem::parse(
            "letters: a b c d\n\
             rule: a -> a b\n\
             rule: b -> a c\n\
             rule: c -> d b\n\
             rule: d -> d c\n\
             code: a = 1\ncode: b = 1\ncode: c = -1\ncode: d = -1\n\
             seed: a\n",
        )
        .expect("builtin system is valid")
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn seed(&self) -> char {
        self.letters[self.seed as usize]
    }

    fn letter_index(&self, letter: char) -> Result<u8> {
        self.letters
            .iter()
            .position(|&l| l == letter)
            .map(|i| i as u8)
            .ok_or_else(|| Error::InvalidSystem(format!("unknown letter `{letter}`")))
    }

    /// Length of the n-fold image of a single letter, saturating at u128.
    fn image_len(&self, letter: u8, n: usize) -> u128 {
        let mut counts = vec![0u128; self.letters.len()];
        counts[letter as usize] = 1;
        let cap = max_work() as u128;
        for _ in 0..n {
            let mut next = vec![0u128; self.letters.len()];
            for (l, cnt) in counts.iter().enumerate() {
                if *cnt == 0 {
                    continue;
                }
                for &im in &self.rules[l] {
                    next[im as usize] = next[im as usize].saturating_add(*cnt);
                }
            }
            counts = next;
            let total: u128 = counts.iter().fold(0, |a, b| a.saturating_add(*b));
            if total > cap {
                return total;
            }
        }
        counts.iter().fold(0, |a, b| a.saturating_add(*b))
    }

    fn expand_indices(&self, letter: u8, n: usize) -> Result<Vec<u8>> {
        let len = self.image_len(letter, n);
        let cap = max_work() as u128;
        if len > cap {
            return Err(Error::WorkCapExceeded { requested: len, cap });
        }
        let mut word = vec![letter];
        for _ in 0..n {
            let mut next = Vec::with_capacity(word.len() * 2);
            for &l in &word {
                next.extend_from_slice(&self.rules[l as usize]);
            }
            word = next;
        }
        Ok(word)
    }

    /// The word sigma^n(seed), as a string over the alphabet.
    pub fn expand(&self, n: usize) -> Result<String> {
        self.expand_letter(self.seed(), n)
    }

    /// sigma^n applied to an arbitrary single letter (no prolongability needed).
    pub fn expand_letter(&self, letter: char, n: usize) -> Result<String> {
        let ix = self.letter_index(letter)?;
        let word = self.expand_indices(ix, n)?;
        Ok(word.into_iter().map(|i| self.letters[i as usize]).collect())
    }

    /// Apply the coding to a word over this alphabet.
    pub fn code(&self, word: &str) -> Result<Vec<i8>> {
        word.chars()
            .map(|ch| self.letter_index(ch).map(|i| self.coding[i as usize]))
            .collect()
    }

    /// Coded expansion of the seed: the +/-1 prefix of length |sigma^n(seed)|.
    pub fn coded_expansion(&self, n: usize) -> Result<Vec<i8>> {
        let word = self.expand_indices(self.seed, n)?;
        Ok(word.into_iter().map(|i| self.coding[i as usize]).collect())
    }

    /// Coded expansion from an arbitrary letter.
    pub fn coded_expansion_of(&self, letter: char, n: usize) -> Result<Vec<i8>> {
        let ix = self.letter_index(letter)?;
        let word = self.expand_indices(ix, n)?;
        Ok(word.into_iter().map(|i| self.coding[i as usize]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_examples() {
        let pf = SubstitutionSystem::paperfolding();
        assert_eq!(pf.expand(0).unwrap(), "a");
        assert_eq!(pf.expand(2).unwrap(), "abcb");
        let rs = SubstitutionSystem::rudin_shapiro();
        assert_eq!(rs.expand(3).unwrap(), "abacabdb");
    }

    #[test]
    fn expansion_is_prolongable() {
        for sys in [SubstitutionSystem::paperfolding(), SubstitutionSystem::rudin_shapiro()] {
            for n in 0..8 {
                let shorter = sys.expand(n).unwrap();
                let longer = sys.expand(n + 1).unwrap();
                assert!(longer.starts_with(&shorter));
            }
        }
    }

    #[test]
    fn cap_guards_expansion() {
        let pf = SubstitutionSystem::paperfolding();
        // 2^40 symbols is far beyond the default cap of 2^20
        assert!(matches!(pf.expand(40), Err(Error::WorkCapExceeded { .. })));
    }

    #[test]
    fn config_round_trip() {
        let pf = SubstitutionSystem::paperfolding();
        let reparsed = SubstitutionSystem::parse(&pf.to_config()).unwrap();
        assert_eq!(pf, reparsed);
    }

    #[test]
    fn validation_rejects_bad_systems() {
        // image uses an unknown letter
        let bad = "letters: a b\nrule: a -> a c\nrule: b -> a\ncode: a = 1\ncode: b = 1\nseed: a\n";
        assert!(SubstitutionSystem::parse(bad).is_err());
        // seed rule does not start with the seed
        let bad = "letters: a b\nrule: a -> b a\nrule: b -> a b\ncode: a = 1\ncode: b = -1\nseed: a\n";
        assert!(SubstitutionSystem::parse(bad).is_err());
        // missing coding
        let bad = "letters: a b\nrule: a -> a b\nrule: b -> a b\ncode: a = 1\nseed: a\n";
        assert!(SubstitutionSystem::parse(bad).is_err());
        // coding outside +/-1
        let bad = "letters: a b\nrule: a -> a b\nrule: b -> a b\ncode: a = 1\ncode: b = 0\nseed: a\n";
        assert!(SubstitutionSystem::parse(bad).is_err());
    }
}
