const margin = {top: 20, right: 20, bottom: 40, left: 50};
const w = width - margin.left - margin.right;
const h = height - margin.top - margin.bottom;
const g = svg.append("g").attr("transform", `translate(${margin.left},${margin.top})`);
const x = d3.scaleLinear().domain(d3.extent(data, d => +d.X)).range([0, w]);
const y = d3.scaleLinear().domain(d3.extent(data, d => +d.Y)).range([h, 0]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${h})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.selectAll("circle.dot").data(data).join("circle")
  .attr("class", "dot")
  .attr("cx", d => x(+d.X))
  .attr("cy", d => y(+d.Y))
  .attr("r", 4)
  .attr("fill", "#59a14f");
