//! Property tests over randomly generated small bases: every finite chain
//! with min as tensor and every cyclic addition monoid must yield a lawful
//! base, and the instance-file round trip must be the identity on them.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use basechange::inst::{parse, serialize, InstanceFile, QuantaleSec, Section};
use basechange::smcc::{check_smcc, monoid_to_smcc, quantale_to_smcc, CommMonoidDesc, QuantaleDesc};
use basechange::Limits;

/// A chain 0 < 1 < ... < n-1 with min as tensor and the top as unit.
fn chain_desc(n: usize) -> QuantaleDesc {
    let elements: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let mut leq = BTreeSet::new();
    let mut tensor = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i <= j {
                leq.insert((elements[i].clone(), elements[j].clone()));
            }
            tensor.insert(
                (elements[i].clone(), elements[j].clone()),
                elements[i.min(j)].clone(),
            );
        }
    }
    QuantaleDesc {
        name: format!("chain{n}"),
        elements: elements.clone(),
        leq,
        tensor,
        unit: elements[n - 1].clone(),
    }
}

/// Addition mod n on {z0, ..., z(n-1)}.
fn cyclic_desc(n: usize) -> CommMonoidDesc {
    let elements: Vec<String> = (0..n).map(|i| format!("z{i}")).collect();
    let mut op = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            op.insert(
                (elements[i].clone(), elements[j].clone()),
                elements[(i + j) % n].clone(),
            );
        }
    }
    CommMonoidDesc {
        name: format!("zmod{n}"),
        elements: elements.clone(),
        op,
        unit: elements[0].clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn every_min_chain_is_a_lawful_base(n in 1usize..=4) {
        let l = Limits::default();
        let v = quantale_to_smcc(&chain_desc(n), &l).unwrap();
        let rep = check_smcc(&v);
        prop_assert!(rep.is_empty(), "{rep}");
    }

    #[test]
    fn every_cyclic_monoid_is_a_lawful_base(n in 1usize..=4) {
        let l = Limits::default();
        let v = monoid_to_smcc(&cyclic_desc(n), &l).unwrap();
        let rep = check_smcc(&v);
        prop_assert!(rep.is_empty(), "{rep}");
    }

    #[test]
    fn chain_files_round_trip_through_parse_and_serialize(n in 1usize..=5) {
        let d = chain_desc(n);
        let file = InstanceFile {
            sections: vec![Section::Quantale(QuantaleSec {
                name: d.name,
                elements: d.elements,
                unit: d.unit,
                leq: d.leq,
                tensor: d.tensor,
            })],
        };
        let bytes = serialize(&file).unwrap();
        let parsed = parse(&bytes).unwrap();
        prop_assert_eq!(&parsed, &file);
        prop_assert_eq!(serialize(&parsed).unwrap(), bytes);
    }
}
