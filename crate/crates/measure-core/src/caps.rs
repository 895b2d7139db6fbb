/// Size limits for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest space whose events are enumerated.
    pub enumeration: usize,
    /// Largest space for the degree-2 search.
    pub quadratic: usize,
    /// Largest space for general polynomial searches.
    pub polynomial: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { enumeration: 20, quadratic: 12, polynomial: 8 }
    }
}

impl Caps {
    /// Defaults, overridden by `COEVENT_CAP`.
    ///
    /// The variable takes either one number applied to every cap, or a list
    /// such as `enum=22,quad=14,poly=9`.
    pub fn from_env() -> Self {
        match std::env::var("COEVENT_CAP") {
            Ok(v) => Self::parse(&v).unwrap_or_default(),
            Err(_) => Self::default(),
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Ok(n) = text.parse::<usize>() {
            return Some(Self { enumeration: n, quadratic: n, polynomial: n });
        }
        let mut caps = Self::default();
        for part in text.split(',') {
            let (k, v) = part.split_once('=')?;
            let v: usize = v.trim().parse().ok()?;
            match k.trim() {
                "enum" | "enumeration" => caps.enumeration = v,
                "quad" | "quadratic" => caps.quadratic = v,
                "poly" | "polynomial" => caps.polynomial = v,
                _ => return None,
            }
        }
        Some(caps)
    }
}
