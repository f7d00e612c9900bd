pub mod field;
pub mod intlat;
pub mod toric;
pub mod series;
pub mod log_smooth;
pub mod monomialize;
pub mod scenario;
pub mod cli;
