use thiserror::Error;

/// Exact cover by 3-sets: a universe `{1, ..., 3q}` and a list of triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ex3cInstance {
    q: usize,
    triples: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("q must be at least 1")]
    EmptyUniverse,
    #[error("at least one triple is required")]
    NoTriples,
    #[error("triple {index}: element {element} outside 1..={max}")]
    OutOfRange { index: usize, element: usize, max: usize },
    #[error("triple {0} repeats an element")]
    Repeated(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Ex3cInstance {
    /// Elements are 1-based; each triple is stored sorted.
    pub fn new(q: usize, triples: Vec<[usize; 3]>) -> Result<Self, InstanceError> {
        if q == 0 {
            return Err(InstanceError::EmptyUniverse);
        }
        if triples.is_empty() {
            return Err(InstanceError::NoTriples);
        }
        let mut sorted = Vec::with_capacity(triples.len());
        for (index, mut t) in triples.into_iter().enumerate() {
            if let Some(&element) = t.iter().find(|&&e| e == 0 || e > 3 * q) {
                return Err(InstanceError::OutOfRange { index, element, max: 3 * q });
            }
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(InstanceError::Repeated(index));
            }
            sorted.push(t);
        }
        Ok(Self { q, triples: sorted })
    }

    /// Reads `q t` followed by `t` lines of three elements.
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let numbers = |line: usize, l: &str, want: usize| -> Result<Vec<usize>, InstanceError> {
            let nums = l
                .split_whitespace()
                .map(str::parse::<usize>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| InstanceError::Parse { line, msg: e.to_string() })?;
            if nums.len() != want {
                return Err(InstanceError::Parse { line, msg: format!("expected {want} numbers") });
            }
            Ok(nums)
        };
        let (line, header) = lines.next().ok_or(InstanceError::Parse { line: 1, msg: "missing header".into() })?;
        let head = numbers(line, header, 2)?;
        let (q, t) = (head[0], head[1]);
        let mut triples = Vec::with_capacity(t);
        for (line, l) in lines.by_ref() {
            if triples.len() == t {
                return Err(InstanceError::Parse { line, msg: "more triples than declared".into() });
            }
            let n = numbers(line, l, 3)?;
            triples.push([n[0], n[1], n[2]]);
        }
        if triples.len() != t {
            return Err(InstanceError::Parse {
                line: text.lines().count(),
                msg: format!("declared {t} triples, found {}", triples.len()),
            });
        }
        Self::new(q, triples)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn t(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Whether the triples at `indices` partition the universe.
    pub fn is_exact_cover(&self, indices: &[usize]) -> bool {
        if indices.len() != self.q || indices.iter().any(|&i| i >= self.t()) {
            return false;
        }
        let mut seen = vec![false; 3 * self.q + 1];
        for &i in indices {
            for &e in &self.triples[i] {
                if std::mem::replace(&mut seen[e], true) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.q, self.t());
        for [a, b, c] in &self.triples {
            s.push_str(&format!("{a} {b} {c}\n"));
        }
        s
    }
}
