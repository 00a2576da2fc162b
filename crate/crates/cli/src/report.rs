use ehall_core::freealg::Bidegree;
use ehall_core::Status;
use serde::{Serialize, Serializer};
use serde_json::Value;

fn status_str<S: Serializer>(s: &Status, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(s.as_str())
}

/// One check outcome. The field set is fixed and shared by both output formats.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check_id: String,
    pub family: Option<String>,
    pub params: Vec<i32>,
    /// `n,d`.
    pub bidegree: Option<String>,
    pub prime: Option<u64>,
    pub seed: u64,
    #[serde(serialize_with = "status_str")]
    pub status: Status,
    pub data: Value,
    /// Only filled with `--timing`, so default reports stay reproducible.
    pub elapsed_ms: Option<u64>,
}

impl Record {
    pub fn new(check_id: impl Into<String>, seed: u64, status: Status, data: Value) -> Self {
        Self {
            check_id: check_id.into(),
            family: None,
            params: Vec::new(),
            bidegree: None,
            prime: None,
            seed,
            status,
            data,
            elapsed_ms: None,
        }
    }

    pub fn family(mut self, name: &str, params: &[i32]) -> Self {
        self.family = Some(name.to_string());
        self.params = params.to_vec();
        self
    }

    pub fn bidegree(mut self, b: Option<Bidegree>) -> Self {
        self.bidegree = b.map(|b| format!("{},{}", b.n, b.d));
        self
    }

    pub fn prime(mut self, p: u64) -> Self {
        self.prime = Some(p);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub inconclusive: usize,
    pub fail: usize,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: Value,
    pub summary: Summary,
    pub records: Vec<Record>,
    /// Wall time of the whole run; the one field that differs between reruns.
    pub wall_time_ms: Option<u64>,
}

impl Report {
    /// Sort records by id and fill in the summary.
    pub fn new(config: Value, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let count = |s| records.iter().filter(|r| r.status == s).count();
        let summary = Summary {
            total: records.len(),
            pass: count(Status::Pass),
            inconclusive: count(Status::Inconclusive),
            fail: count(Status::Fail),
            status: Self::overall_of(&records).as_str().to_string(),
        };
        Self {
            tool: "ehall".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            summary,
            records,
            wall_time_ms: None,
        }
    }

    fn overall_of(records: &[Record]) -> Status {
        records.iter().fold(Status::Pass, |acc, r| acc.and(r.status))
    }

    pub fn overall(&self) -> Status {
        Self::overall_of(&self.records)
    }

    /// 0 all PASS, 1 any FAIL, 3 INCONCLUSIVE but no FAIL.
    pub fn exit_code(&self) -> i32 {
        match self.overall() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }

    /// The report with every timing field cleared.
    pub fn payload(&self) -> Report {
        let mut r = self.clone();
        r.wall_time_ms = None;
        for rec in &mut r.records {
            rec.elapsed_ms = None;
        }
        r
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Flat table with one row per record. `params` are `;`-separated and
    /// `data` is embedded as compact JSON.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "check_id",
            "family",
            "params",
            "bidegree",
            "prime",
            "seed",
            "status",
            "data",
            "elapsed_ms",
        ])
        .expect("in-memory write");
        for r in &self.records {
            let params: Vec<String> = r.params.iter().map(i32::to_string).collect();
            w.write_record([
                r.check_id.clone(),
                r.family.clone().unwrap_or_default(),
                params.join(";"),
                r.bidegree.clone().unwrap_or_default(),
                r.prime.map(|p| p.to_string()).unwrap_or_default(),
                r.seed.to_string(),
                r.status.as_str().to_string(),
                r.data.to_string(),
                r.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn rec(id: &str, s: Status) -> Record {
        Record::new(id, 42, s, json!({}))
    }

    #[test]
    fn sorted_and_summarized() {
        let r = Report::new(json!({}), vec![rec("b", Status::Pass), rec("a", Status::Inconclusive)]);
        assert_eq!(r.records[0].check_id, "a");
        assert_eq!(r.summary.inconclusive, 1);
        assert_eq!(r.summary.status, "INCONCLUSIVE");
    }

    #[test]
    fn exit_codes() {
        let code = |v: Vec<Record>| Report::new(json!({}), v).exit_code();
        assert_eq!(code(vec![]), 0);
        assert_eq!(code(vec![rec("a", Status::Pass)]), 0);
        assert_eq!(code(vec![rec("a", Status::Pass), rec("b", Status::Fail)]), 1);
        assert_eq!(code(vec![rec("a", Status::Inconclusive), rec("b", Status::Fail)]), 1);
        assert_eq!(code(vec![rec("a", Status::Inconclusive), rec("b", Status::Pass)]), 3);
    }

    #[test]
    fn csv_has_fixed_header() {
        let mut r = rec("x", Status::Pass).family("CUBIC", &[1, -2]);
        r.data = json!({"k": "a,b"});
        let csv = Report::new(json!({}), vec![r]).to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "check_id,family,params,bidegree,prime,seed,status,data,elapsed_ms"
        );
        assert_eq!(lines.next().unwrap(), "x,CUBIC,1;-2,,,42,PASS,\"{\"\"k\"\":\"\"a,b\"\"}\",");
    }

    #[test]
    fn payload_drops_timing() {
        let mut r = Report::new(json!({}), vec![rec("a", Status::Pass)]);
        r.wall_time_ms = Some(5);
        r.records[0].elapsed_ms = Some(3);
        let p = r.payload();
        assert_eq!(p.wall_time_ms, None);
        assert_eq!(p.records[0].elapsed_ms, None);
    }
}
