use std::env;

/// Environment variable overriding [`Caps::elements`].
pub const CAP_ELEMENTS_ENV: &str = "GERMKIT_CAP_ELEMENTS";

/// Resource caps applied by the enumeration and verification routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest monoid (abstract or bisection) that will be materialized.
    pub elements: usize,
    /// Largest unit space for which bisections are enumerated.
    pub units: usize,
    /// Largest point set for which `I(X)` is enumerated.
    pub points: usize,
    /// Largest idempotent count for which characters are cross-checked by brute force.
    pub character_oracle: usize,
    /// Largest arrow count accepted by the groupoid isomorphism search.
    pub iso_arrows: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            elements: 2000,
            units: 6,
            points: 5,
            character_oracle: 16,
            iso_arrows: 64,
        }
    }
}

impl Caps {
    /// Defaults, with `GERMKIT_CAP_ELEMENTS` applied when it parses as an integer.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = env::var(CAP_ELEMENTS_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            caps.elements = v;
        }
        caps
    }

    pub(crate) fn check(&self, what: &'static str, size: usize, cap: usize) -> crate::Result<()> {
        if size > cap {
            Err(crate::Error::Size { what, size, cap })
        } else {
            Ok(())
        }
    }
}
