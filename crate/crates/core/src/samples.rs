//! Small benchmark circuits in `.qc` form.

/// The mod5_4 reversible benchmark: 4 CCZ-type gates, 4 CNOTs, one X.
pub const MOD5_4: &str = " .v b c d e a
 .i b c d e

 BEGIN
 X   a
 H   a
 Z   b   e   a
 Z   d   e   a
 H   a
 tof e   a
 H   a
 Z   c   d   a
 H   a
 tof d   a
 H   a
 Z   b   c   a
 H   a
 tof c   a
 tof b   a
 END
";
