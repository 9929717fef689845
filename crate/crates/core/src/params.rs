use crate::error::{Error, Result};

/// Link-level parameters shared by every scheme. Powers are linear with the
/// receiver noise power normalized to one; rates are in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Transmit power of the primary user.
    pub p0: f64,
    /// Maximum transmit power of each secondary user.
    pub ps: f64,
    /// Target rate of the primary user.
    pub r0: f64,
    /// Target rate of the secondary users.
    pub rs: f64,
    /// Number of secondary users.
    pub m: usize,
}

impl SystemParams {
    pub fn new(p0: f64, ps: f64, r0: f64, rs: f64, m: usize) -> Result<Self> {
        let p = Self { p0, ps, r0, rs, m };
        p.validate()?;
        Ok(p)
    }

    /// Builds parameters from an SNR in dB, with `ps = ratio * p0`.
    pub fn from_snr_db(snr_db: f64, ratio: f64, r0: f64, rs: f64, m: usize) -> Result<Self> {
        let p0 = db_to_linear(snr_db);
        Self::new(p0, ratio * p0, r0, rs, m)
    }

    pub fn validate(&self) -> Result<()> {
        positive_finite("p0", self.p0)?;
        positive_finite("ps", self.ps)?;
        positive_finite("r0", self.r0)?;
        positive_finite("rs", self.rs)?;
        if self.m == 0 {
            return Err(Error::InvalidParam {
                name: "m",
                reason: "need at least one secondary user".into(),
            });
        }
        for (name, v) in [
            ("eps0", self.eps0()),
            ("eps_s", self.eps_s()),
            ("alpha0", self.alpha0()),
            ("alpha_s", self.alpha_s()),
        ] {
            positive_finite(name, v)?;
        }
        Ok(())
    }

    /// SNR threshold of the primary user, `2^r0 - 1`.
    #[inline]
    pub fn eps0(&self) -> f64 {
        self.r0.exp2() - 1.0
    }

    /// SNR threshold of a secondary user, `2^rs - 1`.
    #[inline]
    pub fn eps_s(&self) -> f64 {
        self.rs.exp2() - 1.0
    }

    #[inline]
    pub fn alpha0(&self) -> f64 {
        self.eps0() / self.p0
    }

    #[inline]
    pub fn alpha_s(&self) -> f64 {
        self.eps_s() / self.ps
    }

    /// Power coupling `ps / p0`.
    #[inline]
    pub fn ratio(&self) -> f64 {
        self.ps / self.p0
    }
}

fn positive_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParam {
            name,
            reason: format!("must be positive and finite, got {v}"),
        })
    }
}

#[inline]
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
