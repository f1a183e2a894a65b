//! Runtime dispatch from a characteristic to a concrete scalar type.

/// Characteristics the command line understands; `0` means the rationals.
pub const SUPPORTED: [u64; 7] = [0, 2, 3, 5, 7, 11, 13];

/// Runs `$body` with `$F` bound to the scalar type of characteristic `$p`.
macro_rules! with_field {
    ($p:expr, $F:ident => $body:expr) => {
        match $p {
            0 => {
                type $F = hopfo_core::Rational;
                $body
            }
            2 => {
                type $F = hopfo_core::Gf2;
                $body
            }
            3 => {
                type $F = hopfo_core::Gf3;
                $body
            }
            5 => {
                type $F = hopfo_core::Gf5;
                $body
            }
            7 => {
                type $F = hopfo_core::Gf7;
                $body
            }
            11 => {
                type $F = hopfo_core::Fp<11>;
                $body
            }
            13 => {
                type $F = hopfo_core::Fp<13>;
                $body
            }
            p => Err(anyhow::anyhow!(
                "unsupported characteristic {p}; expected one of {:?}",
                $crate::field::SUPPORTED
            )),
        }
    };
}

pub(crate) use with_field;
