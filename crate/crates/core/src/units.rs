//! Conversions between the configuration-boundary units and Hartree atomic
//! units. Everything past the config layer is in a.u. (ħ = mₑ = e = 1).

/// Hartree energy expressed in wavenumbers.
pub const CM1_PER_HARTREE: f64 = 219_474.631_363_2;

/// Bohr radius in Ångström.
pub const ANGSTROM_PER_BOHR: f64 = 0.529_177_210_903;

/// Atomic time unit in femtoseconds.
pub const FS_PER_AUT: f64 = 0.024_188_843_265_857;

/// Electron masses per unified atomic mass unit.
pub const ME_PER_AMU: f64 = 1_822.888_486_209;

pub fn cm1_to_hartree(x: f64) -> f64 {
    x / CM1_PER_HARTREE
}

pub fn hartree_to_cm1(x: f64) -> f64 {
    x * CM1_PER_HARTREE
}

pub fn angstrom_to_bohr(x: f64) -> f64 {
    x / ANGSTROM_PER_BOHR
}

pub fn bohr_to_angstrom(x: f64) -> f64 {
    x * ANGSTROM_PER_BOHR
}

/// Inverse length: Å⁻¹ to bohr⁻¹.
pub fn inv_angstrom_to_inv_bohr(x: f64) -> f64 {
    x * ANGSTROM_PER_BOHR
}

pub fn fs_to_aut(x: f64) -> f64 {
    x / FS_PER_AUT
}

pub fn aut_to_fs(x: f64) -> f64 {
    x * FS_PER_AUT
}

pub fn ns_to_aut(x: f64) -> f64 {
    fs_to_aut(x * 1.0e6)
}

pub fn fs2_to_aut2(x: f64) -> f64 {
    x / (FS_PER_AUT * FS_PER_AUT)
}

pub fn amu_to_me(x: f64) -> f64 {
    x * ME_PER_AMU
}

/// Vacuum wavelength (nm) to wavenumber (cm⁻¹).
pub fn nm_to_cm1(lambda_nm: f64) -> f64 {
    1.0e7 / lambda_nm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let x = 5500.0;
        assert!((hartree_to_cm1(cm1_to_hartree(x)) - x).abs() < 1e-9);
        assert!((bohr_to_angstrom(angstrom_to_bohr(2.65)) - 2.65).abs() < 1e-12);
        assert!((aut_to_fs(fs_to_aut(100.0)) - 100.0).abs() < 1e-9);
    }

    #[test]
    fn known_magnitudes() {
        // 1 Hartree ≈ 27.211 eV ≈ 219474.6 cm⁻¹; 10 ns is ≈ 4.134e8 a.u.
        assert!((cm1_to_hartree(219_474.631_363_2) - 1.0).abs() < 1e-12);
        assert!((ns_to_aut(10.0) - 4.134_137e8).abs() / 4.134e8 < 1e-4);
        assert!((nm_to_cm1(500.0) - 20_000.0).abs() < 1e-9);
    }
}
