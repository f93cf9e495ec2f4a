use stammer_core::complexity::ComplexityProfile;
use stammer_core::stammer::{verify_witness, WitnessSequence};
use stammer_core::{Exponent, SequenceSource};

/// One row of the witness table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRow {
    pub index: usize,
    pub u_len: usize,
    pub v_len: usize,
    pub w: Exponent,
    pub verified: bool,
}

pub fn witness_rows(a: &SequenceSource, ws: &WitnessSequence) -> Vec<WitnessRow> {
    ws.witnesses
        .iter()
        .map(|w| WitnessRow {
            index: w.index,
            u_len: w.u.len(),
            v_len: w.v.len(),
            w: w.w,
            verified: verify_witness(a, w),
        })
        .collect()
}

pub enum PlotData<'a> {
    Profile(&'a ComplexityProfile),
    Witnesses(&'a [WitnessRow]),
}

pub const PROFILE_HEADER: &str = "n\tp\tstable";
pub const WITNESS_HEADER: &str = "index\tu_len\tv_len\tw_num\tw_den\tverified";

/// Tab-separated table with a header line.
pub fn emit_plot_data(data: &PlotData) -> String {
    let mut out = String::new();
    match data {
        PlotData::Profile(p) => {
            out.push_str(PROFILE_HEADER);
            out.push('\n');
            for (i, (c, s)) in p.counts.iter().zip(&p.stable).enumerate() {
                out.push_str(&format!("{}\t{c}\t{s}\n", i + 1));
            }
        }
        PlotData::Witnesses(rows) => {
            out.push_str(WITNESS_HEADER);
            out.push('\n');
            for r in rows.iter() {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.index,
                    r.u_len,
                    r.v_len,
                    r.w.numer(),
                    r.w.denom(),
                    r.verified
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use stammer_core::automata::{to_uniform_morphism, KAutomaton};
    use stammer_core::complexity::complexity_profile;
    use stammer_core::morphisms::{fixed_point, Morphism};
    use stammer_core::stammer::witnesses_for_automatic;
    use stammer_core::Alphabet;

    #[test]
    fn fibonacci_profile_rows() {
        let phi = Morphism::endo(Alphabet::digits(2), &["01", "0"]).unwrap();
        let prof = complexity_profile(&fixed_point(&phi, 0).unwrap(), 30, 10_000).unwrap();
        let text = emit_plot_data(&PlotData::Profile(&prof));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], PROFILE_HEADER);
        assert_eq!(lines.len(), 31);
        for (n, line) in lines[1..].iter().enumerate() {
            assert_eq!(*line, format!("{}\t{}\ttrue", n + 1, n + 2));
        }
    }

    #[test]
    fn empty_witness_table() {
        assert_eq!(emit_plot_data(&PlotData::Witnesses(&[])), format!("{WITNESS_HEADER}\n"));
    }

    #[test]
    fn thue_morse_ratio_column() {
        let d = to_uniform_morphism(&KAutomaton::thue_morse()).unwrap();
        let ws = witnesses_for_automatic(&d.sigma, &d.coding, 12).unwrap();
        let a = stammer_core::automata::generate(&KAutomaton::thue_morse());
        let text = emit_plot_data(&PlotData::Witnesses(&witness_rows(&a, &ws)));
        let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
        assert_eq!(rows.len(), 12);
        for r in rows {
            let (u, v): (usize, usize) = (r[1].parse().unwrap(), r[2].parse().unwrap());
            assert!(u <= v);
            assert_eq!((r[3], r[4], r[5]), ("3", "2", "true"));
        }
    }
}
