//! Benchmark fixtures; see `benches/solver.rs`.

/// The four worked equations plus a few heavier resonant cases.
pub const EQUATIONS: &[&str] = &[
    "y(t+2)-5*y(t+1)+4*y(t)=3^t",
    "y(t+2)-5*y(t+1)+6*y(t)=cos(pi*t)",
    "y(t+2)-5*y(t+1)+4*y(t)=3^t*sin(pi*t)",
    "y(t+1)-2*y(t)=2^t",
    "y(t+3)-3*y(t+2)+3*y(t+1)-y(t)=t^3+2^t*t^2",
    "y(t+4)-4*y(t+3)+6*y(t+2)-4*y(t+1)+y(t)=t^3*cos(pi*t)+5",
];
