//! Published equilibrium rows: profile, then each player's utility ×6 and
//! the social welfare ×30, as linear forms in v0 and v1. Printed values
//! are kept verbatim, including any that disagree with their own columns.

pub const NC00_NASH_LOW: &str = "
21111 2v0+v1 3v1 3v1 3v1 3v1 2v0+13v1
33111 2v0+v1 2v0+v1 3v1 3v1 3v1 v0+11v1
31311 2v0+v1 3v1 2v0+v1 3v1 3v1 4v0+11v1
33331 2v0+3v1 2v0+3v1 2v0+3v1 2v0+3v1 5v1 8v0+17v1";

pub const NC00_NASH_MID: &str = "
13110 5v1 2v0+3v1 5v1 5v1 5v0 7v0+18v1
22111 3v0+2v1 3v0+2v1 5v1 5v1 5v1 6v0+19v1
33111 2v0+v1 2v0+v1 3v1 3v1 3v1 4v0+11v1
33331 2v0+3v1 2v0+3v1 2v0+3v1 2v0+3v1 5v1 8v0+17v1";

pub const NC00_NASH_HIGH: &str = "
32110 2v0+3v1 4v0+v1 5v1 5v1 5v0 11v0+14v1
13110 5v1 2v0+3v1 5v1 5v1 5v0 7v0+18v1
22111 3v0+2v1 3v0+2v1 5v1 5v1 5v1 6v0+19v1
33121 2v0+3v1 2v0+3v1 5v1 4v0+v1 5v1 8v0+17v1
33331 2v0+3v1 2v0+3v1 2v0+3v1 2v0+3v1 5v1 8v0+17v1
32322 2v0+3v1 4v0+v1 2v0+3v1 3v0+2v1 3v0+2v1 14v0+11v1";

pub const NC00_PARETO_LOW: &str = "
21100 3v0+2v1 5v1 5v1 5v0 5v0 13v0+12v1
33200 v0+2v1 v0+2v1 v0+2v1 3v0 3v0 9v0+6v1
32110 2v0+3v1 4v0+v1 5v1 5v1 5v0 11v0+14v1
13110 5v1 2v0+3v1 5v1 5v1 5v0 7v0+18v1
13310 5v1 v0+4v1 v0+4v1 5v1 5v0 7v0+18v1
23120 3v0+2v1 v0+4v1 5v1 3v0+2v1 5v0 12v0+13v1
32230 v0+4v1 4v0+v1 4v0+v1 v0+4v1 5v0 15v0+10v1
21111 2v0+v1 3v1 3v1 3v1 3v1 2v0+13v1
22111 3v0+2v1 3v0+2v1 5v1 5v1 5v1 6v0+19v1
33111 2v0+v1 2v0+v1 3v1 3v1 3v1 4v0+11v1
31311 2v0+v1 3v1 2v0+v1 3v1 3v1 4v0+11v1
33121 2v0+3v1 2v0+3v1 5v1 4v0+v1 5v1 8v0+17v1
33221 2v0+3v1 v0+4v1 3v0+2v1 3v0+2v1 5v1 9v0+16v1
32321 v0+2v1 2v0+v1 2v0+v1 2v0+v1 3v1 7v0+8v1
32231 v0+2v1 v0+2v1 v0+2v1 v0+2v1 3v1 4v0+11v1
33331 2v0+3v1 2v0+3v1 2v0+3v1 2v0+3v1 5v1 8v0+17v1
32322 2v0+3v1 4v0+v1 2v0+3v1 3v0+2v1 3v0+2v1 14v0+11v1
33333 v0+4v1 v0+4v1 v0+4v1 v0+4v1 v0+4v1 5v0+20v1";

pub const NC00_PARETO_MID: &str = "
21100 3v0+2v1 5v1 5v1 5v0 5v0 13v0+12v1
32110 2v0+3v1 4v0+v1 5v1 5v1 5v0 11v0+14v1
13110 5v1 2v0+3v1 5v1 5v1 5v0 7v0+18v1
13310 5v1 v0+4v1 v0+4v1 5v1 5v0 7v0+18v1
23120 3v0+2v1 v0+4v1 5v1 3v0+2v1 5v0 12v0+13v1
32230 v0+4v1 4v0+v1 4v0+v1 v0+4v1 5v0 15v0+10v1
22111 3v0+2v1 3v0+2v1 5v1 5v1 5v1 6v0+19v1
33111 2v0+v1 2v0+v1 3v1 3v1 3v1 4v0+11v1
33121 2v0+3v1 2v0+3v1 5v1 4v0+v1 5v1 8v0+17v1
33221 2v0+3v1 v0+4v1 3v0+2v1 3v0+2v1 5v1 9v0+16v1
32231 v0+2v1 v0+2v1 v0+2v1 v0+2v1 3v1 4v0+11v1
33331 2v0+3v1 2v0+3v1 2v0+3v1 2v0+3v1 5v1 8v0+17v1
32322 2v0+3v1 4v0+v1 2v0+3v1 3v0+2v1 3v0+2v1 14v0+11v1
33333 v0+4v1 v0+4v1 v0+4v1 v0+4v1 v0+4v1 5v0+20v1";

pub const NC00_PARETO_HIGH: &str = "
21100 3v0+2v1 5v1 5v1 5v0 5v0 13v0+12v1
32110 2v0+3v1 4v0+v1 5v1 5v1 5v0 11v0+14v1
13110 5v1 2v0+3v1 5v1 5v1 5v0 7v0+18v1
13310 5v1 v0+4v1 v0+4v1 5v1 5v0 7v0+18v1
23120 3v0+2v1 v0+4v1 5v1 3v0+2v1 5v0 12v0+13v1
32230 v0+4v1 4v0+v1 4v0+v1 v0+4v1 5v0 15v0+10v1
22111 3v0+2v1 3v0+2v1 5v1 5v1 5v1 6v0+19v1
33121 2v0+3v1 2v0+3v1 5v1 4v0+v1 5v1 8v0+17v1
33221 2v0+3v1 v0+4v1 3v0+2v1 3v0+2v1 5v1 9v0+16v1
33331 2v0+3v1 2v0+3v1 2v0+3v1 2v0+3v1 5v1 8v0+17v1
32322 2v0+3v1 4v0+v1 2v0+3v1 3v0+2v1 3v0+2v1 14v0+11v1
33333 v0+4v1 v0+4v1 v0+4v1 v0+4v1 v0+4v1 5v0+20v1";

pub const NC01_MID: &str = "
11200 5v1 5v1 2v0+3v1 5v0 5v0 12v0+13v1
32110 3v0+2v1 3v0+2v1 5v1 5v1 5v0 11v0+14v1
13110 5v1 3v0+2v1 5v1 5v1 5v0 8v0+17v1
32210 2v0+3v1 2v0+3v1 2v0+3v1 5v1 5v0 11v0+14v1
13310 5v1 2v0+3v1 2v0+3v1 5v1 5v0 9v0+16v1
13120 5v1 2v0+3v1 5v1 2v0+3v1 5v0 9v0+16v1
21320 2v0+3v1 5v1 2v0+3v1 2v0+3v1 5v0 11v0+14v1
22111 3v0+2v1 2v0+3v1 5v1 5v1 5v1 5v0+20v1
33121 2v0+3v1 3v0+2v1 5v1 3v0+2v1 5v1 8v0+17v1
33221 3v0+2v1 2v0+3v1 2v0+3v1 3v0+2v1 5v1 10v0+15v1
33331 3v0+2v1 2v0+3v1 3v0+2v1 3v0+2v1 5v1 11v0+14v1
32322 3v0+2v1 3v0+2v1 3v0+2v1 3v0+2v1 2v0+3v1 14v0+11v1
33333 2v0+3v1 2v0+3v1 2v0+3v1 2v0+3v1 2v0+3v1 10v0+15v1";

pub const NC01_HIGH: &str = "
32110 3v0+2v1 3v0+2v1 5v1 5v1 5v0 11v0+14v1
13110 5v1 3v0+2v1 5v1 5v1 5v0 8v0+17v1
22111 3v0+2v1 2v0+3v1 5v1 5v1 5v1 5v0+20v1
33121 2v0+3v1 3v0+2v1 5v1 3v0+2v1 5v1 8v0+17v1
33331 3v0+2v1 2v0+3v1 3v0+2v1 3v0+2v1 5v1 11v0+14v1
32322 3v0+2v1 3v0+2v1 3v0+2v1 3v0+2v1 2v0+3v1 14v0+11v1";
