pub mod exactmath;
pub mod rootsys;
pub mod polytope;
pub mod cone;
pub mod horospace;
pub mod coloredfan;
pub mod fano;
pub mod io;
pub mod commands;
