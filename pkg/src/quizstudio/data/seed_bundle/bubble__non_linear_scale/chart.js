const margin = {top: 20, right: 20, bottom: 40, left: 50};
const w = width - margin.left - margin.right;
const h = height - margin.top - margin.bottom;
const g = svg.append("g").attr("transform", `translate(${margin.left},${margin.top})`);
const x = d3.scaleLinear().domain(d3.extent(data, d => +d.X)).range([0, w]);
const y = d3.scaleLinear().domain(d3.extent(data, d => +d.Y)).range([h, 0]);
const r = d3.scaleLog().domain([1, d3.max(data, d => +d.Size)]).range([2, 24]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${h})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.selectAll("circle.bubble").data(data).join("circle")
  .attr("class", "bubble")
  .attr("cx", d => x(+d.X))
  .attr("cy", d => y(+d.Y))
  .attr("r", d => r(+d.Size))
  .attr("fill", "#f28e2b")
  .attr("opacity", 0.7);
