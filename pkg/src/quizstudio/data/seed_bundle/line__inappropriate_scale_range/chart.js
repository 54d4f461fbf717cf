const margin = {top: 20, right: 20, bottom: 40, left: 50};
const w = width - margin.left - margin.right;
const h = height - margin.top - margin.bottom;
const g = svg.append("g").attr("transform", `translate(${margin.left},${margin.top})`);
const rows = data;
const x = d3.scalePoint().domain(rows.map(d => d.Month)).range([0, w]);
const y = d3.scaleLinear().domain([d3.min(data, d => +d.Value) * 0.95, d3.max(rows, d => +d.Value)]).range([h, 0]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${h})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.append("path").datum(rows)
  .attr("class", "line")
  .attr("fill", "none")
  .attr("stroke", "#e15759")
  .attr("stroke-width", 2)
  .attr("d", d3.line().x(d => x(d.Month)).y(d => y(+d.Value)));
