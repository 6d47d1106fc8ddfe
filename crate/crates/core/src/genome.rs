//! Binary chromosomes: `m` genes of `b` bits, each gene read most
//! significant bit first as the cluster label of the matching cube.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chromosome {
    bits: Vec<bool>,
    bits_per_gene: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelAssignment {
    labels: Vec<u32>,
    bits_per_gene: u32,
}

fn check_gene_width(bits_per_gene: u32) -> Result<()> {
    if !(1..=16).contains(&bits_per_gene) {
        return Err(Error::InvalidArgument(format!(
            "bits per gene {bits_per_gene} not in [1,16]"
        )));
    }
    Ok(())
}

impl Chromosome {
    pub fn new(bits: Vec<bool>, bits_per_gene: u32) -> Result<Self> {
        check_gene_width(bits_per_gene)?;
        if bits.is_empty() || !bits.len().is_multiple_of(bits_per_gene as usize) {
            return Err(Error::InvalidArgument(format!(
                "bit length {} is not a positive multiple of {bits_per_gene}",
                bits.len()
            )));
        }
        Ok(Self {
            bits,
            bits_per_gene,
        })
    }

    /// Parses the textual dump form: contiguous `'0'`/`'1'` characters.
    pub fn parse(text: &str, bits_per_gene: u32) -> Result<Self> {
        let bits = text
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!(
                    "unexpected character {other:?} in bit string"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits, bits_per_gene)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits_per_gene(&self) -> u32 {
        self.bits_per_gene
    }

    pub fn genes(&self) -> usize {
        self.bits.len() / self.bits_per_gene as usize
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn decode(&self) -> LabelAssignment {
        let labels = self
            .bits
            .chunks_exact(self.bits_per_gene as usize)
            .map(|gene| gene.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32))
            .collect();
        LabelAssignment {
            labels,
            bits_per_gene: self.bits_per_gene,
        }
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl LabelAssignment {
    pub fn new(labels: Vec<u32>, bits_per_gene: u32) -> Result<Self> {
        check_gene_width(bits_per_gene)?;
        if let Some(&label) = labels.iter().find(|&&l| l >> bits_per_gene != 0) {
            return Err(Error::LabelOutOfRange {
                label,
                bits: bits_per_gene,
            });
        }
        Ok(Self {
            labels,
            bits_per_gene,
        })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn bits_per_gene(&self) -> u32 {
        self.bits_per_gene
    }

    /// Number of representable labels, `2^b`.
    pub fn label_space(&self) -> usize {
        1 << self.bits_per_gene
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn encode(&self) -> Chromosome {
        let b = self.bits_per_gene;
        let bits = self
            .labels
            .iter()
            .flat_map(|&l| (0..b).rev().map(move |i| (l >> i) & 1 == 1))
            .collect();
        Chromosome {
            bits,
            bits_per_gene: b,
        }
    }
}

pub fn encode(labels: &[u32], bits_per_gene: u32) -> Result<Chromosome> {
    let a = LabelAssignment::new(labels.to_vec(), bits_per_gene)?;
    if a.is_empty() {
        return Err(Error::InvalidArgument("empty assignment".into()));
    }
    Ok(a.encode())
}

/// `n` fair coin flips drawn in bit order.
pub fn random_chromosome<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    bits_per_gene: u32,
) -> Result<Chromosome> {
    let bits = (0..n).map(|_| rng.gen::<bool>()).collect();
    Chromosome::new(bits, bits_per_gene)
}

pub fn hamming(a: &Chromosome, b: &Chromosome) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.bits.iter().zip(&b.bits).filter(|(x, y)| x != y).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decode_examples() {
        let c = Chromosome::parse("000000", 3).unwrap();
        assert_eq!(c.decode().labels(), &[0, 0]);
        let c = Chromosome::parse("101", 3).unwrap();
        assert_eq!(c.decode().labels(), &[5]);
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&[0], 3).unwrap().to_string(), "000");
        assert_eq!(encode(&[7, 1], 3).unwrap().to_string(), "111001");
        assert!(matches!(
            encode(&[8], 3),
            Err(Error::LabelOutOfRange { label: 8, bits: 3 })
        ));
    }

    #[test]
    fn full_size_genome() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = random_chromosome(&mut rng, 177 * 3, 3).unwrap();
        assert_eq!(c.len(), 531);
        assert_eq!(c.decode().len(), 177);
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_chromosome(&mut ChaCha8Rng::seed_from_u64(5), 100, 1).unwrap();
        let b = random_chromosome(&mut ChaCha8Rng::seed_from_u64(5), 100, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_ones_are_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let draws = 10_000;
        let total: usize = (0..draws)
            .map(|_| random_chromosome(&mut rng, 100, 1).unwrap().ones())
            .sum();
        let mean = total as f64 / draws as f64;
        assert!((48.0..=52.0).contains(&mean), "mean ones {mean}");
    }

    #[test]
    fn hamming_examples() {
        let a = Chromosome::parse("000", 1).unwrap();
        let b = Chromosome::parse("111", 1).unwrap();
        assert_eq!(hamming(&a, &a).unwrap(), 0);
        assert_eq!(hamming(&a, &b).unwrap(), 3);
        let c = Chromosome::parse("11", 1).unwrap();
        assert!(hamming(&a, &c).is_err());
    }

    #[test]
    fn rejects_ragged_length() {
        assert!(Chromosome::parse("1010", 3).is_err());
        assert!(Chromosome::parse("", 3).is_err());
        assert!(Chromosome::parse("10x", 3).is_err());
    }

    proptest! {
        #[test]
        fn encode_decode_identity(b in 1u32..=6, raw in proptest::collection::vec(any::<u32>(), 1..40)) {
            let labels: Vec<u32> = raw.iter().map(|l| l % (1 << b)).collect();
            let c = encode(&labels, b).unwrap();
            prop_assert_eq!(c.len(), labels.len() * b as usize);
            prop_assert_eq!(c.decode().labels().to_vec(), labels);
        }

        #[test]
        fn decode_is_total(b in 1u32..=4, bits in proptest::collection::vec(any::<bool>(), 1..20)) {
            let n = bits.len() * b as usize;
            let bits: Vec<bool> = bits.iter().cycle().take(n).copied().collect();
            let c = Chromosome::new(bits, b).unwrap();
            let a = c.decode();
            prop_assert!(a.labels().iter().all(|&l| l < (1 << b)));
            prop_assert_eq!(a.encode(), c);
        }

        #[test]
        fn hamming_symmetric(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_chromosome(&mut rng, 64, 2).unwrap();
            let b = random_chromosome(&mut rng, 64, 2).unwrap();
            prop_assert_eq!(hamming(&a, &b).unwrap(), hamming(&b, &a).unwrap());
        }
    }
}
